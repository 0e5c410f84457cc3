#include "bers/intersection.hpp"

#include <map>

namespace bers {

namespace {

// vertex-slot common to two distinct sides of a triangle
int shared_vertex(int side_a, int side_b) {
  // side s has endpoints at vertex-slots s and s+1
  for (int v : {side_a, (side_a + 1) % 3})
    if (v == side_b || v == (side_b + 1) % 3) return v;
  fail(errc::bad_input, "sides do not share a vertex");
}

int other_endpoint(int side, int v) {
  return (side == v) ? (side + 1) % 3 : side;
}

struct Oriented {
  std::vector<Gate> g;
  // directed crossing before gate t: (triangle entered, side entered)
  EdgeEnd crossing(int t) const {
    return EdgeEnd{g[t].tri, g[t].in_side};
  }
  int size() const { return static_cast<int>(g.size()); }
};

Oriented reversed(const std::vector<Gate>& g) {
  Oriented r;
  for (auto it = g.rbegin(); it != g.rend(); ++it)
    r.g.push_back(Gate{it->tri, it->out_side, it->in_side});
  return r;
}

// marker transport across the edge at (tri, side): the gluing reverses
// orientation, so the start of one side matches the end of the other
int transport_across(const IdealTriangulation& T, int tri, int side,
                     int marker) {
  EdgeEnd o = T.across(tri, side);
  if (marker == side) return (o.side + 1) % 3;
  require(marker == (side + 1) % 3, errc::bad_input, "marker off the edge");
  return o.side;
}

std::int64_t count_pair(const IdealTriangulation& T, const Oriented& A,
                        const Oriented& B) {
  const int n = A.size(), m = B.size();
  const std::int64_t cap = static_cast<std::int64_t>(n) * m + 2;
  std::int64_t crossings = 0;
  for (int t0 = 0; t0 < n; ++t0) {
    for (int s0 = 0; s0 < m; ++s0) {
      if (!(A.crossing(t0) == B.crossing(s0))) continue;
      if (A.crossing((t0 + n - 1) % n) == B.crossing((s0 + m - 1) % m))
        continue;  // extendable backwards, not a corridor start
      std::int64_t M = 1;
      while (M < cap &&
             A.crossing((t0 + M) % n) == B.crossing((s0 + M) % m))
        ++M;
      if (M >= cap) continue;  // periodic match: same geodesic
      // left end: both exit the same slot into the corridor with different
      // entry sides
      const Gate& gA = A.g[(t0 + n - 1) % n];
      const Gate& gB = B.g[(s0 + m - 1) % m];
      require(gA.tri == gB.tri && gA.out_side == gB.out_side &&
                  gA.in_side != gB.in_side,
              errc::bad_input, "corridor end invariant broken");
      int marker = shared_vertex(gA.in_side, gA.out_side);
      marker = transport_across(T, gA.tri, gA.out_side, marker);
      for (std::int64_t k = 0; k + 1 < M; ++k) {
        const Gate& g = A.g[(t0 + k) % n];
        int v_sh = shared_vertex(g.in_side, g.out_side);
        marker = (marker == v_sh) ? v_sh : other_endpoint(g.out_side, v_sh);
        marker = transport_across(T, g.tri, g.out_side, marker);
      }
      const Gate& gR = A.g[(t0 + static_cast<int>(M) - 1) % n];
      int forward_flank = shared_vertex(gR.out_side, gR.in_side);
      if (marker != forward_flank) ++crossings;
    }
  }
  return crossings;
}

std::int64_t component_pair(const IdealTriangulation& T,
                            const std::vector<Gate>& a,
                            const std::vector<Gate>& b) {
  Oriented fwd;
  fwd.g = b;
  return count_pair(T, Oriented{a}, fwd) + count_pair(T, Oriented{a}, reversed(b));
}

}  // namespace

std::int64_t intersection_number(const CurveClass& a, const CurveClass& b) {
  require(a.tri.get() == b.tri.get() || a.tri->same_tables(*b.tri),
          errc::surface_mismatch, "curves live on different charts");
  if (a.w == b.w) return 0;
  return component_pair(*a.tri, a.gates, b.gates);
}

std::int64_t intersection_number(TriPtr T, const Weights& a, const Weights& b) {
  Decomposition da = decompose(T, a), db = decompose(T, b);
  require(da.peripheral.empty() && db.peripheral.empty(), errc::peripheral,
          "intersection numbers are defined for essential multicurves");
  std::int64_t total = 0;
  for (const auto& [ca, ma] : da.essential)
    for (const auto& [cb, mb] : db.essential) {
      if (ca.w == cb.w) continue;
      total += static_cast<std::int64_t>(ma) * mb *
               component_pair(*T, ca.gates, cb.gates);
    }
  return total;
}

bool disjoint(TriPtr T, const Weights& a, const Weights& b) {
  if (a.isZero() || b.isZero()) return true;
  Weights sum = a + b;
  if (!satisfies_matching(*T, sum)) return false;
  // count components with multiplicity on both sides
  std::map<std::vector<std::int64_t>, int> want;
  auto add = [&](const Weights& w, int sign) {
    for (const auto& [c, mult] : decompose(T, w).essential) {
      std::vector<std::int64_t> key(c.w.data(), c.w.data() + c.w.size());
      want[key] += sign * mult;
    }
  };
  add(a, 1);
  add(b, 1);
  add(sum, -1);
  for (const auto& [k, v] : want)
    if (v != 0) return false;
  return true;
}

}  // namespace bers
