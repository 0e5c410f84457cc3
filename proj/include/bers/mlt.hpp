#pragma once

#include "bers/limits.hpp"

namespace bers {

// One component of a layer of the multi-layered Thurston limit.
struct LayerComponent {
  enum class Kind { closed_curve, irrational, arc };
  Kind kind;
  std::optional<CurveClass> curve;         // closed_curve
  std::optional<StableLamination> lamination;  // irrational
  std::optional<ArcClass> arc;             // arc (with its hosting complex)
  std::shared_ptr<const CutComplex> host;  // complex the arc lives on
  int layer = 0;
  // minimal supporting surface data (empty frontier = fills its piece)
  std::vector<CurveClass> support_frontier;
  SurfaceType support_sig;
  // frontier curves eligible for the extended union (arc components only):
  // those disjoint from every layer component
  std::vector<CurveClass> extended_frontier;
  // stabilized integral approximants (irrational components)
  Weights approx, approx2;
};

struct MltLayer {
  std::vector<LayerComponent> components;
  int subsequence_q = 1, subsequence_r = 0;
  // signatures of the pieces this layer was detected on
  std::vector<SurfaceType> pieces;
};

struct MltResult {
  std::vector<MltLayer> layers;
  std::vector<std::vector<SurfaceType>> surfaces;  // S_0, S_1, ... piece lists
  std::vector<SurfaceType> final_pieces;           // bounded remainder
  // the three unions, as (kind, curve-or-lamination) component lists
  struct UnionSet {
    std::vector<CurveClass> curves;
    std::vector<StableLamination> laminations;
  };
  UnionSet core, intermediate, extended;
};

struct MltConfig {
  LimitConfig limit;
  int max_layers = 0;           // 0 = xi(S)
  int candidate_budget = 10;
  std::int64_t piece_curve_cap = 12;
  int arc_gate_budget = 14;
};

// The multi-layered Thurston limit of Definition-style iterated detection:
// detect, remove supports and cut closed leaves, recurse on the pieces.
MltResult multi_layered_limit(const TeichSequence& seq, const MltConfig& cfg);

MltResult::UnionSet core_union(const MltResult& r);
MltResult::UnionSet intermediate_union(const MltResult& r);
MltResult::UnionSet extended_union(const MltResult& r);

// A boundary point presented by its end invariant data.
struct EndingData {
  StableLamination lamination;
  std::vector<CurveClass> support_frontier;
  SurfaceType support_sig;
};

struct EndInvariant {
  TriPtr tri;
  std::vector<CurveClass> parabolics;
  std::vector<EndingData> endings;
};

struct SandwichVerdict {
  bool lower_ok = false;  // intermediate union contained in the target
  bool upper_ok = false;  // target contained in the extended union
  std::vector<std::string> lower_witnesses, upper_witnesses;
};

// Theorem-style containment check between the computed unions and a
// candidate end invariant.
SandwichVerdict sandwich_check(const MltResult& r, const EndInvariant& target);

// Component-wise equality of irrational laminations: same defining word and
// projective weights within tol.
bool same_lamination(const StableLamination& a, const StableLamination& b,
                     double tol = 1e-9);

}  // namespace bers
