#pragma once

#include "bers/regions.hpp"
#include "bers/shear.hpp"

namespace bers {

// An essential properly embedded arc of a complementary region, presented
// as a gate path between a crossing of one frontier curve and a crossing of
// another (possibly the same).  The endpoints slide freely on the frontier;
// the functional is the orthogeodesic length between the frontier axes.
struct ArcClass {
  int region = -1;
  int curve_a = -1, curve_b = -1;  // indices into the hosting system
  int gate_a = 0, gate_b = 0;      // attachment gates on the curves' traces
  bool start_above = false, end_above = false;  // flanking interval choices
  std::vector<Gate> gates;         // full traversals between the end crossings
  std::array<std::int64_t, 4> fingerprint{};  // traces at the symmetric point

  bool same_class(const ArcClass& o) const {
    return curve_a == o.curve_a && curve_b == o.curve_b &&
           fingerprint == o.fingerprint;
  }
};

// Essential arcs of one region up to the gate budget, deduplicated by their
// symmetric-point trace fingerprints.
std::vector<ArcClass> enumerate_arcs(const CutComplex& cc, int region,
                                     int gate_budget, int max_classes = 64);

// Orthogeodesic length of the arc under m (distance between the attached
// frontier axes along the arc's class).
double arc_length(const ShearStructure& m, const CutComplex& cc,
                  const ArcClass& arc);

// Whether a curve disjoint from the system can be isotoped off the arc.
// Decided by re-finding the arc's class in the complex refined by x.
enum class ArcCurveRelation { disjoint, crossing };
ArcCurveRelation arc_curve_relation(const CutComplex& cc, const ArcClass& arc,
                                    const CurveClass& x, int gate_budget);

}  // namespace bers
