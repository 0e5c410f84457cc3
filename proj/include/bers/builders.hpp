#pragma once

#include <map>

#include "bers/mapping_class.hpp"

namespace bers {

// All edge relabelings carrying one triangle table onto another (up to
// triangle reorder and ccw rotation).
std::vector<std::vector<int>> find_relabels(const IdealTriangulation& from,
                                            const IdealTriangulation& to);

// Flip word shortening a curve to total weight 2 (greedy with a two-step
// lookahead); returns the word and the final chart + curve.
struct ShortenResult {
  std::vector<int> flips;
  TriPtr chart;
  Weights w;
};
ShortenResult shorten(const CurveClass& c);

// A family of Dehn twists with mutually consistent handedness: products
// T_a T_b^{-1} over crossing pairs of the family are never periodic or
// parabolic when i(a,b) <= 2.  Twists are built once and calibrated against
// the first curve of each crossing-graph component.
class TwistFamily {
 public:
  explicit TwistFamily(std::vector<CurveClass> curves);

  const MappingClass& twist(int i) const { return twists_[i]; }
  const CurveClass& curve(int i) const { return curves_[i]; }
  int size() const { return static_cast<int>(curves_.size()); }

  // signed product: word({{i,+1},{j,-2}}) = T_i * T_j^-2 (applied right to
  // left as written, i.e. T_j^-2 first)
  MappingClass word(const std::vector<std::pair<int, int>>& powers) const;

 private:
  std::vector<CurveClass> curves_;
  std::vector<MappingClass> twists_;
};

}  // namespace bers
