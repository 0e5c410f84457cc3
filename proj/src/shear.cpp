#include "bers/shear.hpp"

#include <cmath>

namespace bers {

ShearStructure symmetric_structure(TriPtr T) {
  return ShearStructure{T, RealWeights::Zero(T->num_edges())};
}

double completeness_defect(const ShearStructure& m) {
  const auto& T = *m.tri;
  double worst = 0.0;
  for (const auto& link : T.links()) {
    double sum = 0.0;
    for (auto [t, c] : link) sum += m.x[T.tri(t).edge[c]];
    worst = std::max(worst, std::abs(sum));
  }
  return worst;
}

void require_complete(const ShearStructure& m, double tol) {
  double scale = std::max(1.0, m.x.cwiseAbs().maxCoeff());
  double eff = std::max(tol, 1e-12 * scale);
  require(completeness_defect(m) <= eff, errc::non_complete_structure,
          "puncture shear sums do not vanish");
}

void ScaledMat::renorm() {
  double s = m.cwiseAbs().maxCoeff();
  if (s > 1e100 || (s < 1e-100 && s > 0.0)) {
    m /= s;
    log_scale += std::log(s);
  }
}

ScaledMat& ScaledMat::operator*=(const ScaledMat& o) {
  m = (m * o.m).eval();
  log_scale += o.log_scale;
  renorm();
  return *this;
}

double ScaledMat::log_abs_trace() const {
  double tr = m(0, 0) + m(1, 1);
  if (tr == 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(std::abs(tr)) + log_scale;
}

double ScaledMat::det_residual() const {
  // each factor has unit determinant, so det(m) = exp(-2 log_scale); the
  // numerical check is meaningful only while ad - bc does not cancel
  double det = m.determinant();
  double mag = m.cwiseAbs().maxCoeff();
  if (mag * mag > 1e8 * std::abs(det) || std::abs(log_scale) > 25.0)
    return 0.0;  // condition-limited
  if (det <= 0.0) return 2.0;
  return std::abs(std::log(det) + 2.0 * log_scale);
}

ScaledMat edge_matrix(double shear) {
  ScaledMat e;
  double s = std::abs(shear) / 2.0;
  e.m << 0.0, std::exp(shear / 2.0 - s), -std::exp(-shear / 2.0 - s), 0.0;
  e.log_scale = s;
  return e;
}

ScaledMat turn_matrix(bool left) {
  ScaledMat t;
  if (left)
    t.m << 1.0, 1.0, -1.0, 0.0;
  else
    t.m << 0.0, 1.0, -1.0, -1.0;
  return t;
}

namespace {

ScaledMat product(const ShearStructure& m, std::span<const Gate> gates,
                  bool close) {
  const auto& T = *m.tri;
  ScaledMat h;
  for (size_t i = 0; i < gates.size(); ++i) {
    const Gate& g = gates[i];
    h *= edge_matrix(m.x[T.tri(g.tri).edge[g.in_side]]);
    if (close || i + 1 < gates.size()) h *= turn_matrix(g.left_turn());
  }
  return h;
}

}  // namespace

ScaledMat holonomy(const ShearStructure& m, std::span<const Gate> gates) {
  return product(m, gates, true);
}

ScaledMat path_holonomy(const ShearStructure& m, std::span<const Gate> gates) {
  return product(m, gates, false);
}

double length_from_log_trace(double log_abs_tr) {
  // length = 2 arccosh(|tr|/2)
  double ly = log_abs_tr - std::log(2.0);
  require(ly > 5e-10, errc::degenerate_structure,
          "curve holonomy is not hyperbolic (|trace| <= 2)");
  if (ly < 30.0) {
    double y = std::exp(ly);
    return 2.0 * std::acosh(y);
  }
  // arccosh(y) = log y + log(1 + sqrt(1 - y^-2))
  return 2.0 * (ly + std::log1p(std::sqrt(std::max(0.0, 1.0 - std::exp(-2 * ly)))));
}

double geodesic_length(const ShearStructure& m, std::span<const Gate> gates) {
  require_complete(m);
  LogMat2 h = log_holonomy(m, gates);
  LogNum tr = h.trace();
  require(tr.sign != 0, errc::degenerate_structure, "trace vanished");
  return length_from_log_trace(tr.lg);
}

double geodesic_length(const ShearStructure& m, const CurveClass& c) {
  require(m.tri.get() == c.tri.get() || m.tri->same_tables(*c.tri),
          errc::surface_mismatch, "metric and curve on different charts");
  return geodesic_length(m, std::span<const Gate>(c.gates));
}

double axis_distance(const ScaledMat& X, const ScaledMat& Y,
                     const ScaledMat& conj) {
  // cosh d = |2 tr(X H Y H^-1) - tr X tr Y| / sqrt((tr^2 X - 4)(tr^2 Y - 4))
  // normalize the conjugator to determinant one so the sandwich stays
  // balanced however long the path is
  double det = conj.m.determinant();
  require(det > 0.0, errc::bad_input, "singular conjugator");
  Mat2 cn = conj.m / std::sqrt(det);
  Mat2 cn_inv;
  cn_inv << cn(1, 1), -cn(0, 1), -cn(1, 0), cn(0, 0);
  ScaledMat Yc;
  Yc.m = cn * Y.m * cn_inv;
  Yc.log_scale = Y.log_scale;
  Yc.renorm();
  ScaledMat XY = X;
  XY *= Yc;
  double tx = X.m(0, 0) + X.m(1, 1), ty = Y.m(0, 0) + Y.m(1, 1);
  double txy = XY.m(0, 0) + XY.m(1, 1);
  // work with logs to survive long conjugators
  double l_num_a = std::log(2.0) + std::log(std::abs(txy)) + XY.log_scale;
  double l_num_b = std::log(std::abs(tx)) + std::log(std::abs(ty)) +
                   X.log_scale + Y.log_scale;
  double sign_a = (txy >= 0 ? 1.0 : -1.0), sign_b = (tx * ty >= 0 ? 1.0 : -1.0);
  // num = sign_a e^{l_num_a} - sign_b e^{l_num_b}
  double hi = std::max(l_num_a, l_num_b);
  double num = sign_a * std::exp(l_num_a - hi) - sign_b * std::exp(l_num_b - hi);
  double l_num = (num == 0.0) ? -std::numeric_limits<double>::infinity()
                              : std::log(std::abs(num)) + hi;
  // when the two terms cancel to the precision floor the distance itself is
  // below resolution (cosh d - 1 underflows); report zero, never a crossing
  if (l_num < hi - 30.0) return 0.0;
  auto log_tr2m4 = [](double t, double ls) {
    double lt2 = 2.0 * (std::log(std::abs(t)) + ls);
    require(lt2 > std::log(4.0) + 1e-12, errc::degenerate_structure,
            "arc endpoint holonomy is not hyperbolic");
    double corr = std::log1p(-4.0 * std::exp(-lt2));
    return lt2 + corr;
  };
  double l_den =
      0.5 * (log_tr2m4(tx, X.log_scale) + log_tr2m4(ty, Y.log_scale));
  double lcosh = l_num - l_den;
  require(lcosh > -1e-4, errc::bad_input,
          "axes cross; the path does not define an arc");
  if (lcosh < 0.0) lcosh = 0.0;
  if (lcosh < 30.0) return std::acosh(std::max(1.0, std::exp(lcosh)));
  return lcosh + std::log(2.0);
}



LogNum LogNum::of(double v) {
  LogNum n;
  if (v > 0) {
    n.sign = 1;
    n.lg = std::log(v);
  } else if (v < 0) {
    n.sign = -1;
    n.lg = std::log(-v);
  }
  return n;
}

LogNum operator*(LogNum a, LogNum b) {
  LogNum c;
  c.sign = a.sign * b.sign;
  c.lg = (c.sign == 0) ? -std::numeric_limits<double>::infinity()
                       : a.lg + b.lg;
  return c;
}

LogNum operator+(LogNum a, LogNum b) {
  if (a.sign == 0) return b;
  if (b.sign == 0) return a;
  if (a.lg < b.lg) std::swap(a, b);
  double d = b.lg - a.lg;  // <= 0
  LogNum c;
  if (a.sign == b.sign) {
    c.sign = a.sign;
    c.lg = a.lg + std::log1p(std::exp(d));
  } else {
    double t = -std::expm1(d);  // 1 - e^d in (0,1]
    if (t <= 0.0) return LogNum{};  // exact cancellation at this precision
    c.sign = a.sign;
    c.lg = a.lg + std::log(t);
  }
  return c;
}

LogNum operator-(LogNum a, LogNum b) {
  b.sign = -b.sign;
  return a + b;
}

LogMat2 LogMat2::identity() {
  LogMat2 I;
  I.m[0][0] = LogNum{0.0, 1};
  I.m[1][1] = LogNum{0.0, 1};
  return I;
}

LogMat2 LogMat2::edge(double shear) {
  LogMat2 e;
  e.m[0][1] = LogNum{shear / 2.0, 1};
  e.m[1][0] = LogNum{-shear / 2.0, -1};
  return e;
}

LogMat2 LogMat2::turn(bool left) {
  LogMat2 t;
  if (left) {
    t.m[0][0] = LogNum{0.0, 1};
    t.m[0][1] = LogNum{0.0, 1};
    t.m[1][0] = LogNum{0.0, -1};
  } else {
    t.m[0][1] = LogNum{0.0, 1};
    t.m[1][0] = LogNum{0.0, -1};
    t.m[1][1] = LogNum{0.0, -1};
  }
  return t;
}

LogMat2 LogMat2::operator*(const LogMat2& o) const {
  LogMat2 c;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      c.m[i][j] = m[i][0] * o.m[0][j] + m[i][1] * o.m[1][j];
  return c;
}

LogMat2 LogMat2::adjugate() const {
  LogMat2 a;
  a.m[0][0] = m[1][1];
  a.m[1][1] = m[0][0];
  a.m[0][1] = m[0][1];
  a.m[0][1].sign = -a.m[0][1].sign;
  a.m[1][0] = m[1][0];
  a.m[1][0].sign = -a.m[1][0].sign;
  return a;
}

LogMat2 log_holonomy(const ShearStructure& m, std::span<const Gate> gates) {
  const auto& T = *m.tri;
  LogMat2 h = LogMat2::identity();
  for (const Gate& g : gates) {
    h = h * LogMat2::edge(m.x[T.tri(g.tri).edge[g.in_side]]);
    h = h * LogMat2::turn(g.left_turn());
  }
  return h;
}

double axis_distance(const LogMat2& X, const LogMat2& Y, const LogMat2& conj) {
  LogMat2 W = X * (conj * Y * conj.adjugate());
  LogNum trW = W.trace(), trX = X.trace(), trY = Y.trace();
  LogNum two = LogNum::of(2.0), four = LogNum::of(4.0);
  LogNum num = two * trW - trX * trY;
  LogNum dx = trX * trX - four, dy = trY * trY - four;
  require(dx.sign > 0 && dy.sign > 0, errc::degenerate_structure,
          "arc endpoint holonomy is not hyperbolic");
  double l_den = 0.5 * (dx.lg + dy.lg);
  if (num.sign == 0) return 0.0;
  // cancellation floor: treat values below the working precision of the
  // dominant terms as zero rather than as crossings
  double hi = std::max((two * trW).lg, (trX * trY).lg);
  if (num.lg < hi - 30.0) return 0.0;
  double lcosh = num.lg - l_den;
  require(lcosh > -1e-4, errc::bad_input,
          "axes cross; the path does not define an arc");
  if (lcosh < 0.0) lcosh = 0.0;
  if (lcosh < 30.0) return std::acosh(std::max(1.0, std::exp(lcosh)));
  return lcosh + std::log(2.0);
}

}  // namespace bers
