#pragma once

#include <string>
#include <vector>

#include "bers/lamination.hpp"

namespace bers {

// One flip, with the quadrilateral labels captured at compile time.
// p and r are the ccw successors of the flipped edge in its two triangles,
// q and s the ccw predecessors; (p,r) and (q,s) are the opposite side pairs.
struct FlipStep {
  int e, p, q, r, s;
};

// A mapping class presented as a flip word followed by an edge relabeling
// taking the final chart back to the base chart.  Immutable; `then`,
// `inverse` and `power` build new classes.
class MappingClass {
 public:
  static MappingClass identity(TriPtr base);
  MappingClass(TriPtr base, std::vector<int> flips, std::vector<int> relabel,
               std::string name = "");

  const TriPtr& base() const { return base_; }
  const std::vector<int>& flips() const { return flips_; }
  const std::vector<int>& relabel() const { return relabel_; }
  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }
  bool is_identity_word() const { return flips_.empty() && relabel_is_id_; }

  Weights apply(const Weights& w) const;
  RealWeights apply(const RealWeights& w) const;
  CurveClass apply(const CurveClass& c) const;
  RealWeights apply_shears(const RealWeights& x) const;

  // this first, then next
  MappingClass then(const MappingClass& next) const;
  MappingClass inverse() const;
  MappingClass power(int n) const;

  // number of elementary flip steps
  int word_length() const { return static_cast<int>(flips_.size()); }

 private:
  void compile();

  TriPtr base_;
  std::vector<int> flips_;
  std::vector<int> relabel_;
  bool relabel_is_id_ = true;
  std::vector<FlipStep> steps_;
  std::string name_;
};

// Dehn twist about a canonical curve, constructed by shortening flips and a
// verified local word; `handed` selects the twist or its inverse relative to
// the construction's own convention.
MappingClass twist_about(const CurveClass& c);

}  // namespace bers
