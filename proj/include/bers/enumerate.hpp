#pragma once

#include <functional>

#include "bers/lamination.hpp"

namespace bers {

// Visit every admissible integer vector with all weights <= cap.
// The visit order is deterministic (DFS over a fixed edge order).
void enumerate_admissible(const IdealTriangulation& T, std::int64_t cap,
                          const std::function<void(const Weights&)>& visit);

// Every essential simple closed curve whose canonical weights are <= cap,
// sorted lexicographically.  Complete for the given cap by uniqueness of
// normal form.
std::vector<CurveClass> enumerate_curves(TriPtr T, std::int64_t cap);

// Pairwise-disjointness matrix for a curve list.
Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> disjointness_table(
    const std::vector<CurveClass>& curves);

// All multicurves with exactly k components drawn from `curves`, as index
// tuples (increasing).
std::vector<std::vector<int>> enumerate_multicurves(
    const std::vector<CurveClass>& curves, int k);
std::vector<std::vector<int>> enumerate_multicurves(
    const Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>& disj, int k);

}  // namespace bers
