#pragma once

#include "bers/mapping_class.hpp"

namespace bers {

struct PFConfig {
  double vector_tol = 1e-12;  // convergence of normalized iterates
  int max_iterations = 100000;
  int power_bound = 50;       // cone-positivity search bound
  double invariance_tol = 1e-9;
  std::int64_t probe_cap = 4;  // weight cap for certification probes
};

// Dominant invariant lamination data of a mapping class: the attracting
// fixed point of the induced projective action on edge weights, together
// with the repelling one (the inverse's attractor) and the evidence that the
// class is pseudo-Anosov on the subsurface the pair fills.
struct StableLamination {
  RealWeights weights;          // stable side, sup-norm normalized
  RealWeights unstable_weights; // inverse's attractor
  double dilatation = 0;        // growth factor, > 1
  Eigen::MatrixXd transition;   // branch-resolved linear action at the fixed point
  int positive_power = 0;       // least k with f^k positive on the support cone
  std::vector<int> active_edges;
  std::vector<int> disjoint_probes;  // probe curves missing the support
  std::string word;             // provenance: name of the defining class
  std::shared_ptr<const MappingClass> cls;  // the defining class itself
};

// Power iteration of the piecewise-linear curve action with Rayleigh
// refinement.  Certifies pseudo-Anosov behaviour on the support: both
// orbits converge with matching dilatations, the invariant pair crosses,
// and the pair fills what the probes can see.  Throws reducible-or-periodic
// otherwise (a Dehn twist, for instance, has coinciding invariant vectors).
StableLamination stable_lamination(const MappingClass& f,
                                   const PFConfig& cfg = {});

// Projective distance ||a/|a| - b/|b||_inf with sup normalization.
double projective_gap(const RealWeights& a, const RealWeights& b);

}  // namespace bers
