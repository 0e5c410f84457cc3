#pragma once

#include <optional>

#include "bers/arcs.hpp"
#include "bers/shear.hpp"
#include "bers/stable.hpp"

namespace bers {

// A sequence of marked hyperbolic structures m_i = W(i) . m0, where W(i) is
// a word in mapping classes with exponents linear in i.
struct TeichSequence {
  ShearStructure base;
  // applied right to left: {{f,1},{g,2}} gives m_i = f^i g^{2i} . m0
  std::vector<std::pair<MappingClass, int>> word;
  std::string name;

  ShearStructure at(int i) const;
};

// Candidate functionals for projective limit detection on the full surface
// or on a piece of a cut complex.
struct CandidateSet {
  TriPtr tri;
  std::vector<CurveClass> curves;
  // arcs live on a hosting complex (shared by every piece of one cut system)
  std::shared_ptr<const CutComplex> complex;
  std::vector<ArcClass> arcs;

  int size() const {
    return static_cast<int>(curves.size() + arcs.size());
  }
};

// Spanning candidates on a whole surface: every curve up to the weight cap,
// at least `budget` of them (the cap grows until the budget is met).
CandidateSet candidate_curves(TriPtr T, int budget);
// Candidates carried by one region of a cut complex: contained curves and
// essential arcs.
CandidateSet candidate_curves(std::shared_ptr<const CutComplex> cc, int region,
                              int budget, std::int64_t curve_cap = 12,
                              int arc_gate_budget = 14);

struct LimitConfig {
  int i_max = 30;
  double tol_proj = 1e-3;   // epsilon_proj
  double l_max = 0;         // boundedness threshold; 0 = derive from surface
  int subsequence_q_max = 4;
  int reconstruct_union = 3;
};

double default_l_max(const SurfaceType& s);

enum class Verdict { bounded, converges, inconclusive };

// One detected limit: a projective lamination assembled from curve
// components with positive weights, invariant laminations of the sequence
// word, and possibly a single arc class.
struct LimitClass {
  // (curve, weight) components
  std::vector<std::pair<CurveClass, double>> curve_parts;
  // cached invariant laminations (stable side of word classes)
  std::vector<StableLamination> lamination_parts;
  std::optional<ArcClass> arc_part;

  bool empty() const {
    return curve_parts.empty() && lamination_parts.empty() && !arc_part;
  }
};

struct ProjectiveLimitReport {
  Verdict verdict = Verdict::inconclusive;
  std::optional<LimitClass> limit;
  double residual = 0;        // match residual of the extrapolated vector
  double raw_residual = 0;    // last-step stabilization of v_i
  int subsequence_q = 1, subsequence_r = 0;
  std::vector<int> indices_used;
  Eigen::MatrixXd normalized_vectors;  // one row per index used
  std::vector<std::string> candidate_names;
  std::string note;
};

// Thurston limit detection along the sequence, over the candidate set.
ProjectiveLimitReport thurston_limit(const TeichSequence& seq,
                                     const CandidateSet& candidates,
                                     const LimitConfig& cfg);

}  // namespace bers
