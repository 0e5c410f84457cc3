#pragma once

#include "bers/lamination.hpp"

namespace bers {

// Exact geometric intersection number of two canonical curves.
//
// Lifted to the universal cover, the dual graph of the triangulation is a
// tree, so two geodesics cross iff they share a corridor of edges and enter
// and leave it on opposite flanks.  Crossings are counted as maximal shared
// corridors whose flank marker switches sides; everything is slot arithmetic
// on the traced gate sequences.
std::int64_t intersection_number(const CurveClass& a, const CurveClass& b);

// Bilinear extension to admissible integral vectors (multicurves with
// multiplicity; peripheral components are rejected).
std::int64_t intersection_number(TriPtr T, const Weights& a, const Weights& b);

// i(a,b) == 0, decided by normal-coordinate additivity: two multicurves are
// disjoint iff the decomposition of the summed vector reproduces both.
bool disjoint(TriPtr T, const Weights& a, const Weights& b);

}  // namespace bers
