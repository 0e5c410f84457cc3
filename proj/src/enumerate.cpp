#include "bers/enumerate.hpp"

#include <algorithm>
#include <queue>

#include "bers/intersection.hpp"

namespace bers {

void enumerate_admissible(const IdealTriangulation& T, std::int64_t cap,
                          const std::function<void(const Weights&)>& visit) {
  int E = T.num_edges();
  // edge order: breadth-first over triangles so that triangles close early
  std::vector<int> order;
  std::vector<char> seen_edge(E, 0), seen_tri(T.num_triangles(), 0);
  std::queue<int> q;
  q.push(0);
  seen_tri[0] = 1;
  while (!q.empty()) {
    int t = q.front();
    q.pop();
    for (int k = 0; k < 3; ++k) {
      int e = T.tri(t).edge[k];
      if (!seen_edge[e]) {
        seen_edge[e] = 1;
        order.push_back(e);
      }
      EdgeEnd o = T.across(t, k);
      if (!seen_tri[o.tri]) {
        seen_tri[o.tri] = 1;
        q.push(o.tri);
      }
    }
  }
  require(static_cast<int>(order.size()) == E, errc::bad_input,
          "triangulation is not connected");

  std::vector<int> rank(E);
  for (int i = 0; i < E; ++i) rank[order[i]] = i;

  Weights w = Weights::Zero(E);
  // for pruning: per triangle, list of edge ranks
  struct TriRanks {
    std::array<int, 3> r;
    std::array<int, 3> e;
  };
  std::vector<TriRanks> tris(T.num_triangles());
  for (int t = 0; t < T.num_triangles(); ++t)
    for (int k = 0; k < 3; ++k) {
      tris[t].e[k] = T.tri(t).edge[k];
      tris[t].r[k] = rank[T.tri(t).edge[k]];
    }

  std::function<void(int)> dfs = [&](int pos) {
    if (pos == E) {
      visit(w);
      return;
    }
    int e = order[pos];
    std::int64_t lo = 0, hi = cap;
    int parity = -1;  // -1 unknown
    bool dead = false;
    for (int t = 0; t < T.num_triangles() && !dead; ++t) {
      const auto& tr = tris[t];
      for (int k = 0; k < 3; ++k) {
        if (tr.e[k] != e || tr.r[k] != pos) continue;
        // if this slot is the unique maximal rank in its triangle the other
        // two weights are known (note an edge can appear twice in a triangle)
        int k1 = (k + 1) % 3, k2 = (k + 2) % 3;
        bool other_known = tr.r[k1] <= pos && tr.r[k2] <= pos;
        if (tr.e[k1] == e || tr.e[k2] == e) {
          // doubled edge in this triangle: 2w vs third side; handle by
          // post-check only
          other_known = false;
        }
        if (!other_known) continue;
        std::int64_t a = w[tr.e[k1]], b = w[tr.e[k2]];
        lo = std::max(lo, std::max(a, b) - std::min(a, b));
        hi = std::min(hi, a + b);
        int par = static_cast<int>((a + b) % 2);
        if (parity == -1) parity = par;
        else if (parity != par) dead = true;
      }
    }
    if (dead || lo > hi) return;
    for (std::int64_t v = lo; v <= hi; ++v) {
      if (parity >= 0 && v % 2 != parity) continue;
      w[e] = v;
      // full check of every triangle that just completed
      bool ok = true;
      for (int t = 0; t < T.num_triangles() && ok; ++t) {
        const auto& tr = tris[t];
        int mx = std::max({tr.r[0], tr.r[1], tr.r[2]});
        if (mx != pos) continue;
        if (!corner_counts<std::int64_t>(w[tr.e[0]], w[tr.e[1]], w[tr.e[2]]))
          ok = false;
      }
      if (ok) dfs(pos + 1);
    }
    w[e] = 0;
  };
  dfs(0);
}

std::vector<CurveClass> enumerate_curves(TriPtr T, std::int64_t cap) {
  std::vector<CurveClass> out;
  enumerate_admissible(*T, cap, [&](const Weights& w) {
    if (w.isZero()) return;
    // quick reject: a connected essential curve never exceeds one component
    // per corner budget; full trace decides
    auto r = canonicalize(T, w);
    if (r.ok()) out.push_back(std::move(*r.curve));
  });
  std::sort(out.begin(), out.end());
  return out;
}

Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> disjointness_table(
    const std::vector<CurveClass>& curves) {
  int n = static_cast<int>(curves.size());
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> d(n, n);
  for (int i = 0; i < n; ++i) {
    d(i, i) = true;
    for (int j = i + 1; j < n; ++j) {
      bool dj = intersection_number(curves[i], curves[j]) == 0;
      d(i, j) = d(j, i) = dj;
    }
  }
  return d;
}

std::vector<std::vector<int>> enumerate_multicurves(
    const Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>& disj, int k) {
  int n = static_cast<int>(disj.rows());
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < n; ++i) {
      bool ok = true;
      for (int j : cur)
        if (!disj(j, i)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

std::vector<std::vector<int>> enumerate_multicurves(
    const std::vector<CurveClass>& curves, int k) {
  return enumerate_multicurves(disjointness_table(curves), k);
}

}  // namespace bers
