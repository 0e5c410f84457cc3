#pragma once

#include <span>

#include "bers/lamination.hpp"

namespace bers {

// A point of Teichmueller space in shear coordinates on the fixed chart.
// Complete iff the shears around every puncture sum to zero.
struct ShearStructure {
  TriPtr tri;
  RealWeights x;
};

ShearStructure symmetric_structure(TriPtr T);

// max |puncture sum|
double completeness_defect(const ShearStructure& m);
void require_complete(const ShearStructure& m, double tol = 1e-9);

// 2x2 matrix with a separate log scale, so holonomies of arbitrarily long or
// degenerate curves stay representable.
struct ScaledMat {
  Mat2 m = Mat2::Identity();
  double log_scale = 0.0;

  void renorm();
  ScaledMat& operator*=(const ScaledMat& o);
  // |trace| as log value
  double log_abs_trace() const;
  double det_residual() const;  // |det - 1| in true scale (log-aware)
};

ScaledMat edge_matrix(double shear);
ScaledMat turn_matrix(bool left);

// Holonomy of a cyclic gate sequence under m.
ScaledMat holonomy(const ShearStructure& m, std::span<const Gate> gates);
// Holonomy of an open gate path (no closing turn after the last crossing).
ScaledMat path_holonomy(const ShearStructure& m, std::span<const Gate> gates);

// Hyperbolic translation length from |trace|; raises degenerate-structure
// when |trace| <= 2 + 2e-9.
double length_from_log_trace(double log_abs_tr);

// Signed log-scale number: value = sign * exp(lg).
struct LogNum {
  double lg = -std::numeric_limits<double>::infinity();
  int sign = 0;

  static LogNum of(double v);
  double value() const { return sign * std::exp(lg); }
};
LogNum operator*(LogNum a, LogNum b);
LogNum operator+(LogNum a, LogNum b);
LogNum operator-(LogNum a, LogNum b);

// 2x2 matrix with log-scale entries; every factor used here has unit
// determinant, so the inverse is the adjugate.  This survives shear
// coordinates of any magnitude (the scaled form cannot hold e^{x/2} and
// e^{-x/2} together once |x| passes the double range).
struct LogMat2 {
  LogNum m[2][2];
  static LogMat2 identity();
  static LogMat2 edge(double shear);
  static LogMat2 turn(bool left);
  LogMat2 operator*(const LogMat2& o) const;
  LogMat2 adjugate() const;
  LogNum trace() const { return m[0][0] + m[1][1]; }
};

LogMat2 log_holonomy(const ShearStructure& m, std::span<const Gate> gates);

double geodesic_length(const ShearStructure& m, const CurveClass& c);
double geodesic_length(const ShearStructure& m, std::span<const Gate> gates);

// Distance between the axes of two loops, given their based holonomies and
// the connecting path holonomy; this is the orthogeodesic length of the arc
// the path represents.  Raises if the axes cross.
double axis_distance(const ScaledMat& X, const ScaledMat& Y,
                     const ScaledMat& conj);
double axis_distance(const LogMat2& X, const LogMat2& Y, const LogMat2& conj);

}  // namespace bers
