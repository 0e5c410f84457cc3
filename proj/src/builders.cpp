#include "bers/builders.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include "bers/enumerate.hpp"
#include "bers/intersection.hpp"

namespace bers {

std::vector<std::vector<int>> find_relabels(const IdealTriangulation& from,
                                            const IdealTriangulation& to) {
  std::vector<std::vector<int>> found;
  int nt = from.num_triangles();
  if (nt != to.num_triangles()) return found;
  int E = from.num_edges();
  std::vector<int> map(E, -1), inv(E, -1);
  std::vector<char> used(nt, 0);

  std::function<void(int)> rec = [&](int ft) {
    if (ft == nt) {
      found.push_back(map);
      return;
    }
    const auto& fe = from.tri(ft).edge;
    for (int bt = 0; bt < nt; ++bt) {
      if (used[bt]) continue;
      const auto& be = to.tri(bt).edge;
      for (int rot = 0; rot < 3; ++rot) {
        // try mapping fe[k] -> be[(k+rot)%3]
        std::vector<std::pair<int, int>> placed;
        bool ok = true;
        for (int k = 0; k < 3 && ok; ++k) {
          int a = fe[k], b = be[(k + rot) % 3];
          if (map[a] == -1 && inv[b] == -1) {
            map[a] = b;
            inv[b] = a;
            placed.push_back({a, b});
          } else if (map[a] != b) {
            ok = false;
          }
        }
        if (ok) {
          used[bt] = 1;
          rec(ft + 1);
          used[bt] = 0;
        }
        for (auto [a, b] : placed) {
          map[a] = -1;
          inv[b] = -1;
        }
      }
    }
  };
  rec(0);
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  return found;
}

namespace {

std::int64_t tropical_flip_value(const IdealTriangulation& T, const Weights& v,
                                 int e) {
  const auto& en = T.ends(e);
  int t = en[0].tri, k = en[0].side, tp = en[1].tri, kp = en[1].side;
  std::int64_t p = v[T.tri(t).edge[(k + 1) % 3]],
                q = v[T.tri(t).edge[(k + 2) % 3]],
                r = v[T.tri(tp).edge[(kp + 1) % 3]],
                s = v[T.tri(tp).edge[(kp + 2) % 3]];
  return std::max(p + r, q + s) - v[e];
}

std::string state_key(const IdealTriangulation& T, const Weights& w) {
  std::string key;
  for (const Triangle& t : T.triangles())
    for (int e : t.edge) key += std::to_string(e) + ",";
  key += "|";
  for (int e = 0; e < w.size(); ++e) key += std::to_string(w[e]) + ",";
  return key;
}

}  // namespace

namespace {

struct SearchState {
  TriPtr chart;
  Weights w;
  std::vector<int> flips;
};

// breadth-first over flips whose intermediate totals stay within `slack` of
// the starting total; returns the first state that strictly improves it
std::optional<SearchState> find_descent(const SearchState& start,
                                        std::int64_t slack, size_t budget) {
  std::int64_t total = start.w.sum();
  std::vector<SearchState> frontier = {start};
  std::set<std::string> seen{state_key(*start.chart, start.w)};
  size_t expansions = 0;
  while (!frontier.empty()) {
    std::vector<SearchState> next;
    for (const SearchState& st : frontier) {
      if (++expansions > budget) return std::nullopt;
      for (int e = 0; e < st.chart->num_edges(); ++e) {
        if (!st.chart->flippable(e)) continue;
        std::int64_t ne = tropical_flip_value(*st.chart, st.w, e);
        std::int64_t t2 = st.w.sum() - st.w[e] + ne;
        if (t2 > total + slack) continue;
        SearchState nx;
        nx.chart = std::make_shared<IdealTriangulation>(st.chart->flipped(e));
        nx.w = st.w;
        nx.w[e] = ne;
        nx.flips = st.flips;
        nx.flips.push_back(e);
        if (t2 < total) return nx;
        if (seen.insert(state_key(*nx.chart, nx.w)).second)
          next.push_back(std::move(nx));
      }
    }
    frontier = std::move(next);
  }
  return std::nullopt;
}

}  // namespace

ShortenResult shorten(const CurveClass& c) {
  SearchState cur{c.tri, c.w, {}};
  int guard = 0;
  while (cur.w.sum() > 2) {
    require(++guard < 1024, errc::bad_input, "shortening did not terminate");
    std::optional<SearchState> better;
    for (std::int64_t slack : {0, 2, 4}) {
      better = find_descent(cur, slack, slack ? 50000u : 20000u);
      if (better) break;
    }
    if (!better) break;  // best effort: local minimum of the restricted moves
    cur = std::move(*better);
  }
  return ShortenResult{std::move(cur.flips), cur.chart, cur.w};
}

namespace {

// Verify that m acts as a Dehn twist about c on a probe set.
bool verify_twist(const MappingClass& m, const CurveClass& c,
                  const std::vector<CurveClass>& probes) {
  if (m.apply(c.w) != c.w) return false;
  bool moved = false;
  for (const auto& x : probes) {
    std::int64_t k = intersection_number(x, c);
    Weights y = m.apply(x.w);
    if (k == 0) {
      if (y != x.w) return false;
      continue;
    }
    moved = true;
    auto yc = canonicalize(c.tri, y);
    if (!yc.ok()) return false;
    if (intersection_number(*yc.curve, x) != k * k) return false;
    if (intersection_number(*yc.curve, c) != k) return false;
  }
  return moved;
}

}  // namespace

namespace {

// local twist word at a shortened position; empty when the search fails
std::optional<MappingClass> local_twist(const CurveClass& orig,
                                        const SearchState& sh) {
  const TriPtr& S = sh.chart;
  if (sh.w.sum() > 5) return std::nullopt;
  std::vector<int> crossed;
  for (int e = 0; e < S->num_edges(); ++e)
    if (sh.w[e] != 0) crossed.push_back(e);
  auto short_c = canonicalize(S, sh.w);
  if (!short_c.ok()) return std::nullopt;
  std::vector<CurveClass> probes = enumerate_curves(S, 3);

  int base_count = static_cast<int>(crossed.size());
  for (int len = 1; len <= 7; ++len) {
    std::vector<int> idx(len, 0);
    while (true) {
      std::vector<int> word;
      for (int i = 0; i < len; ++i) word.push_back(crossed[idx[i]]);
      IdealTriangulation cur = *S;
      bool legal = true;
      for (int e : word) {
        if (!cur.flippable(e)) {
          legal = false;
          break;
        }
        cur = cur.flipped(e);
      }
      if (legal) {
        for (const auto& sigma : find_relabels(cur, *S)) {
          MappingClass cand(S, word, sigma);
          if (!verify_twist(cand, *short_c.curve, probes)) continue;
          // conjugate back: base -> short chart -> twist -> back
          std::vector<int> flips = sh.flips;
          flips.insert(flips.end(), word.begin(), word.end());
          std::vector<int> inv(sigma.size());
          for (size_t e = 0; e < sigma.size(); ++e)
            inv[sigma[e]] = static_cast<int>(e);
          for (auto it = sh.flips.rbegin(); it != sh.flips.rend(); ++it)
            flips.push_back(inv[*it]);
          MappingClass full(orig.tri, std::move(flips), sigma, "tw");
          if (full.apply(orig.w) != orig.w) continue;
          return full;
        }
      }
      int i = len - 1;
      while (i >= 0 && ++idx[i] == base_count) idx[i--] = 0;
      if (i < 0) break;
    }
  }
  return std::nullopt;
}

}  // namespace

MappingClass twist_about(const CurveClass& c) {
  SearchState cur{c.tri, c.w, {}};
  int guard = 0;
  while (true) {
    require(++guard < 256, errc::bad_input, "twist construction looped");
    if (cur.w.sum() <= 5) {
      if (auto tw = local_twist(c, cur)) return *tw;
    }
    std::optional<SearchState> better;
    for (std::int64_t slack : {0, 2, 4}) {
      better = find_descent(cur, slack, slack ? 60000u : 20000u);
      if (better) break;
    }
    if (!better) {
      // nothing left to try below; one last attempt at the current position
      if (auto tw = local_twist(c, cur)) return *tw;
      fail(errc::bad_input, "no local twist word found");
    }
    cur = std::move(*better);
  }
}

TwistFamily::TwistFamily(std::vector<CurveClass> curves)
    : curves_(std::move(curves)) {
  require(!curves_.empty(), errc::bad_input, "empty twist family");
  for (const auto& c : curves_) twists_.push_back(twist_about(c));

  // handedness calibration: along a spanning forest of the crossing graph,
  // T_a T_b^-1 must have exponential orbit growth when i(a,b) <= 2
  int n = size();
  std::vector<int> state(n, 0);  // 0 unvisited, 1 calibrated
  auto growth_is_exponential = [&](const MappingClass& w,
                                   const CurveClass& probe) {
    Weights v = probe.w;
    std::int64_t t6 = 0, t12 = 0;
    for (int k = 1; k <= 12; ++k) {
      v = w.apply(v);
      if (k == 6) t6 = v.sum();
      if (k == 12) t12 = v.sum();
    }
    return t6 > 0 && t12 > 16 * t6;
  };
  for (int root = 0; root < n; ++root) {
    if (state[root]) continue;
    state[root] = 1;
    std::vector<int> stack = {root};
    while (!stack.empty()) {
      int i = stack.back();
      stack.pop_back();
      for (int j = 0; j < n; ++j) {
        if (state[j]) continue;
        std::int64_t k = intersection_number(curves_[i], curves_[j]);
        if (k == 0) continue;
        require(k <= 2, errc::bad_input,
                "calibration needs crossing numbers <= 2");
        MappingClass w = twists_[j].inverse().then(twists_[i]);
        if (!growth_is_exponential(w, curves_[i]))
          twists_[j] = twists_[j].inverse();
        require(growth_is_exponential(
                    twists_[j].inverse().then(twists_[i]), curves_[i]),
                errc::bad_input, "handedness calibration failed");
        state[j] = 1;
        stack.push_back(j);
      }
    }
  }
}

MappingClass TwistFamily::word(
    const std::vector<std::pair<int, int>>& powers) const {
  MappingClass acc = MappingClass::identity(curves_[0].tri);
  for (auto it = powers.rbegin(); it != powers.rend(); ++it)
    acc = acc.then(twists_[it->first].power(it->second));
  return acc;
}

}  // namespace bers
