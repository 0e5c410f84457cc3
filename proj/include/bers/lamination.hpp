#pragma once

#include <optional>
#include <vector>

#include "bers/triangulation.hpp"

namespace bers {

// One traversal of a triangle by a traced strand: in through side in_side,
// out through side out_side.
struct Gate {
  int tri;
  int in_side;
  int out_side;
  bool left_turn() const { return out_side == (in_side + 2) % 3; }
  bool operator==(const Gate&) const = default;
};

struct TraceComponent {
  std::vector<Gate> gates;  // cyclic
  // entry crossing of each gate: (edge, position along the side of
  // ends(edge)[0])
  std::vector<std::pair<int, std::int64_t>> crossings;
  Weights weights;
  bool peripheral = false;
  int linked_vertex = -1;  // set when peripheral
};

struct Trace {
  std::vector<TraceComponent> components;
  bool all_peripheral() const {
    for (const auto& c : components)
      if (!c.peripheral) return false;
    return !components.empty();
  }
};

// Per-triangle corner counts of an admissible weight vector; m[v] is the
// number of arcs cutting the corner at vertex-slot v.
template <class Scalar>
std::optional<std::array<Scalar, 3>> corner_counts(Scalar a, Scalar b,
                                                   Scalar c) {
  // side weights (w0,w1,w2) against corners (m0,m1,m2): w_j = m_j + m_{j+1}
  std::array<Scalar, 3> w = {a, b, c}, m;
  for (int v = 0; v < 3; ++v) {
    Scalar twice = w[(v + 2) % 3] + w[v] - w[(v + 1) % 3];
    if (twice < 0) return std::nullopt;
    if constexpr (std::is_integral_v<Scalar>) {
      if (twice % 2 != 0) return std::nullopt;
      m[v] = twice / 2;
    } else {
      m[v] = twice / 2;
    }
  }
  return m;
}

bool satisfies_matching(const IdealTriangulation& T, const Weights& w);
bool satisfies_matching(const IdealTriangulation& T, const RealWeights& w);

// Full trace of an admissible integer vector into components.
Trace trace_weights(const IdealTriangulation& T, const Weights& w);

// A canonical essential simple closed curve: unique normal representative on
// the fixed triangulation, ordered lexicographically by weights.
struct CurveClass {
  TriPtr tri;
  Weights w;
  std::vector<Gate> gates;  // one traversal of the traced curve

  int total_weight() const { return static_cast<int>(w.sum()); }
  bool operator==(const CurveClass& o) const { return w == o.w; }
  bool operator<(const CurveClass& o) const {
    return std::lexicographical_compare(w.data(), w.data() + w.size(),
                                        o.w.data(), o.w.data() + o.w.size());
  }
};

enum class RejectReason { empty, matching_violation, not_connected, peripheral };

struct CanonicalizeResult {
  std::optional<CurveClass> curve;
  std::optional<RejectReason> reject;
  std::string detail;
  bool ok() const { return curve.has_value(); }
};

CanonicalizeResult canonicalize(TriPtr T, const Weights& w);

// Decomposition of an admissible vector into isotopy classes with
// multiplicities; peripheral components are reported separately.
struct Decomposition {
  std::vector<std::pair<CurveClass, int>> essential;
  std::vector<std::pair<int, int>> peripheral;  // (vertex, multiplicity)
};

Decomposition decompose(TriPtr T, const Weights& w);

}  // namespace bers
