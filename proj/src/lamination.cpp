#include "bers/lamination.hpp"

#include <map>

namespace bers {

namespace {

template <class Vec>
bool matching_impl(const IdealTriangulation& T, const Vec& w) {
  if (w.size() != T.num_edges()) return false;
  for (int i = 0; i < w.size(); ++i)
    if (w[i] < 0) return false;
  for (int t = 0; t < T.num_triangles(); ++t) {
    const auto& e = T.tri(t).edge;
    if (!corner_counts(w[e[0]], w[e[1]], w[e[2]])) return false;
  }
  return true;
}

}  // namespace

bool satisfies_matching(const IdealTriangulation& T, const Weights& w) {
  return matching_impl(T, w);
}
bool satisfies_matching(const IdealTriangulation& T, const RealWeights& w) {
  return matching_impl(T, w);
}

Trace trace_weights(const IdealTriangulation& T, const Weights& w) {
  require(satisfies_matching(T, w), errc::matching_violation,
          "weights violate the triangle matching conditions");
  Trace out;
  int E = T.num_edges();
  std::vector<std::int64_t> offset(E + 1, 0);
  for (int e = 0; e < E; ++e) offset[e + 1] = offset[e] + w[e];
  std::int64_t total = offset[E];
  if (total == 0) return out;
  std::vector<char> visited(static_cast<size_t>(total), 0);

  // corner counts per (triangle, vertex-slot)
  std::vector<std::array<std::int64_t, 3>> m(T.num_triangles());
  for (int t = 0; t < T.num_triangles(); ++t) {
    const auto& e = T.tri(t).edge;
    m[t] = *corner_counts<std::int64_t>(w[e[0]], w[e[1]], w[e[2]]);
  }

  // Walk: a position is (triangle, side entered, index along that side).
  // Points on side j are ordered from vertex-slot j to j+1; gluings reverse.
  for (int e0 = 0; e0 < E; ++e0) {
    for (std::int64_t i0 = 0; i0 < w[e0]; ++i0) {
      if (visited[offset[e0] + i0]) continue;
      TraceComponent comp;
      comp.weights = Weights::Zero(E);
      // enter the triangle on side ends(e0)[0]; the canonical index of a
      // crossing is its position along that side
      EdgeEnd at = T.ends(e0)[0];
      std::int64_t side_pos = i0;
      int guard = 0;
      while (true) {
        require(++guard < (1 << 30), errc::bad_input, "trace runaway");
        int t = at.tri, j = at.side;
        const auto& edges = T.tri(t).edge;
        int ein = edges[j];
        // mark the entry crossing visited (index convention: position along
        // the side of ends(ein)[0])
        std::int64_t canon_pos =
            (T.ends(ein)[0] == at) ? side_pos : w[ein] - 1 - side_pos;
        if (visited[offset[ein] + canon_pos]) break;
        visited[offset[ein] + canon_pos] = 1;
        comp.crossings.push_back({ein, canon_pos});
        comp.weights[ein] += 1;
        int jout;
        std::int64_t out_pos;
        if (side_pos < m[t][j]) {
          // corner at vertex-slot j: exit through side j-1, left turn
          jout = (j + 2) % 3;
          out_pos = w[edges[jout]] - 1 - side_pos;
        } else {
          // corner at vertex-slot j+1: exit through side j+1, right turn
          jout = (j + 1) % 3;
          out_pos = w[edges[j]] - 1 - side_pos;
        }
        comp.gates.push_back(Gate{t, j, jout});
        EdgeEnd next = T.across(t, jout);
        at = next;
        side_pos = w[edges[jout]] - 1 - out_pos;
      }
      // classify: peripheral iff all turns agree
      bool all_left = true, all_right = true;
      for (const Gate& g : comp.gates) {
        if (g.left_turn()) all_right = false;
        else all_left = false;
      }
      comp.peripheral = (all_left || all_right) && !comp.gates.empty();
      if (comp.peripheral) {
        const Gate& g = comp.gates.front();
        comp.linked_vertex = all_left
                                 ? T.corner_vertex(g.tri, g.in_side)
                                 : T.corner_vertex(g.tri, (g.in_side + 1) % 3);
      }
      out.components.push_back(std::move(comp));
    }
  }
  return out;
}

CanonicalizeResult canonicalize(TriPtr T, const Weights& w) {
  CanonicalizeResult r;
  if (w.size() == static_cast<int>(T->num_edges()) && w.isZero()) {
    r.reject = RejectReason::empty;
    r.detail = "all-zero weight vector";
    return r;
  }
  if (!satisfies_matching(*T, w)) {
    r.reject = RejectReason::matching_violation;
    r.detail = "triangle matching conditions violated";
    return r;
  }
  Trace tr = trace_weights(*T, w);
  int essential = 0, peripheral = 0;
  const TraceComponent* the_one = nullptr;
  for (const auto& c : tr.components) {
    if (c.peripheral) {
      ++peripheral;
    } else {
      ++essential;
      the_one = &c;
    }
  }
  if (essential == 0) {
    r.reject = RejectReason::peripheral;
    r.detail = "every component is a puncture link";
    return r;
  }
  if (essential > 1 || peripheral > 0) {
    r.reject = RejectReason::not_connected;
    r.detail = "vector carries " + std::to_string(essential) +
               " essential and " + std::to_string(peripheral) +
               " peripheral components";
    return r;
  }
  r.curve = CurveClass{T, the_one->weights, the_one->gates};
  return r;
}

Decomposition decompose(TriPtr T, const Weights& w) {
  Decomposition d;
  if (w.isZero()) return d;
  Trace tr = trace_weights(*T, w);
  std::map<std::vector<std::int64_t>, std::pair<const TraceComponent*, int>>
      ess;
  std::map<int, int> per;
  for (const auto& c : tr.components) {
    if (c.peripheral) {
      per[c.linked_vertex]++;
    } else {
      std::vector<std::int64_t> key(c.weights.data(),
                                    c.weights.data() + c.weights.size());
      auto [it, fresh] = ess.try_emplace(key, &c, 0);
      it->second.second++;
    }
  }
  for (auto& [key, val] : ess)
    d.essential.push_back(
        {CurveClass{T, val.first->weights, val.first->gates}, val.second});
  for (auto& [v, n] : per) d.peripheral.push_back({v, n});
  return d;
}

}  // namespace bers
