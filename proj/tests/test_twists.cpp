#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bers/builders.hpp"
#include "bers/enumerate.hpp"
#include "bers/intersection.hpp"
#include "bers/shear.hpp"

using namespace bers;

namespace {

CurveClass curve(TriPtr T, std::initializer_list<std::int64_t> v) {
  Weights w(T->num_edges());
  int i = 0;
  for (auto x : v) w[i++] = x;
  auto r = canonicalize(T, w);
  REQUIRE(r.ok());
  return *r.curve;
}

}  // namespace

TEST_CASE("twist on the punctured torus") {
  auto T = default_triangulation(make_surface(1, 1));
  auto a = curve(T, {0, 1, 1});
  auto b = curve(T, {1, 0, 1});
  MappingClass ta = twist_about(a);
  CHECK(ta.apply(a.w) == a.w);
  // twist-intersection growth: i(T_a^n b, b) = n * i(a,b)^2
  Weights img = b.w;
  for (int n = 1; n <= 5; ++n) {
    img = ta.apply(img);
    auto ic = canonicalize(T, img);
    REQUIRE(ic.ok());
    CHECK(intersection_number(*ic.curve, b) == n);
    CHECK(intersection_number(*ic.curve, a) == 1);
  }
}

TEST_CASE("twist family with calibration is pseudo-Anosov-ready") {
  auto T = default_triangulation(make_surface(1, 1));
  TwistFamily fam({curve(T, {0, 1, 1}), curve(T, {1, 0, 1})});
  // T_a T_b^-1 must grow like the golden dilatation squared... just verify
  // exponential growth and projective convergence later (PF module)
  MappingClass w = fam.word({{0, 1}, {1, -1}});
  Weights v = fam.curve(0).w;
  std::int64_t prev = v.sum();
  double ratio = 0;
  for (int k = 0; k < 20; ++k) {
    v = w.apply(v);
    ratio = double(v.sum()) / double(prev);
    prev = v.sum();
  }
  // golden ratio squared = 2.618...
  CHECK(ratio == doctest::Approx(2.6180339887).epsilon(1e-6));
  // while T_a T_b (same handedness) is periodic
  MappingClass pw = fam.word({{0, 1}, {1, 1}});
  Weights u = fam.curve(0).w;
  std::int64_t m = 0;
  for (int k = 0; k < 12; ++k) {
    u = pw.apply(u);
    m = std::max(m, u.sum());
  }
  CHECK(m <= 16 * fam.curve(0).w.sum());
}

TEST_CASE("twists about separating curves on S(0,5)") {
  auto T = default_triangulation(make_surface(0, 5));
  auto curves = enumerate_curves(T, 4);
  REQUIRE(curves.size() >= 5);
  // pick two crossing curves
  int na = -1, nb = -1;
  for (size_t i = 0; i < curves.size() && na < 0; ++i)
    for (size_t j = i + 1; j < curves.size(); ++j) {
      if (intersection_number(curves[i], curves[j]) == 2) {
        na = static_cast<int>(i);
        nb = static_cast<int>(j);
        break;
      }
    }
  REQUIRE(na >= 0);
  TwistFamily fam({curves[na], curves[nb]});
  const auto& a = fam.curve(0);
  const auto& b = fam.curve(1);
  Weights img = b.w;
  for (int n = 1; n <= 4; ++n) {
    img = fam.twist(0).apply(img);
    auto ic = canonicalize(T, img);
    REQUIRE(ic.ok());
    CHECK(intersection_number(*ic.curve, b) == 4 * n);  // n * i(a,b)^2
    CHECK(intersection_number(*ic.curve, a) == 2);
  }
  // naturality of lengths under the twist: l_{f.m}(f.c) = l_m(c)
  auto m = symmetric_structure(T);
  RealWeights fx = fam.twist(0).apply_shears(m.x);
  ShearStructure fm{T, fx};
  CHECK(completeness_defect(fm) < 1e-9);
  for (const auto& c : {a, b, curves[0]}) {
    auto fc = fam.twist(0).apply(c);
    CHECK(geodesic_length(fm, fc) ==
          doctest::Approx(geodesic_length(m, c)).epsilon(1e-9));
  }
  // twisting m along a fixes the length of a
  CHECK(geodesic_length(fm, fam.twist(0).apply(a)) ==
        doctest::Approx(geodesic_length(m, a)).epsilon(1e-12));
}

TEST_CASE("pullback identity for lengths") {
  auto T = default_triangulation(make_surface(1, 1));
  TwistFamily fam({curve(T, {0, 1, 1}), curve(T, {1, 0, 1})});
  MappingClass f = fam.word({{0, 1}, {1, -1}});
  auto m = symmetric_structure(T);
  auto c = curve(T, {1, 1, 0});
  // l_{f.m}(c) = l_m(f^-1.c)
  ShearStructure fm{T, f.apply_shears(m.x)};
  double lhs = geodesic_length(fm, c);
  double rhs = geodesic_length(m, f.inverse().apply(c));
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
}
