#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bers/arcs.hpp"
#include "bers/builders.hpp"
#include "bers/enumerate.hpp"
#include "bers/intersection.hpp"

using namespace bers;

TEST_CASE("arcs of the pieces of a pants decomposition of S(0,5)") {
  auto T = default_triangulation(make_surface(0, 5));
  auto curves = enumerate_curves(T, 6);
  auto pairs = enumerate_multicurves(curves, 2);
  REQUIRE(!pairs.empty());
  auto& pr = pairs.front();
  CutComplex cc(T, {curves[pr[0]], curves[pr[1]]});
  REQUIRE(cc.num_regions() == 3);
  auto m = symmetric_structure(T);
  int with_two_frontiers = -1;
  for (int r = 0; r < 3; ++r) {
    const auto& R = cc.region(r);
    int b = 0;
    for (auto [k, mult] : R.frontier) b += mult;
    auto arcs = enumerate_arcs(cc, r, 16);
    CHECK(!arcs.empty());
    for (const auto& a : arcs) {
      double d = arc_length(m, cc, a);
      CHECK(d > 0);
      CHECK(d < 50);
    }
    if (b == 2 && R.frontier.size() == 2) with_two_frontiers = r;
  }
  REQUIRE(with_two_frontiers >= 0);
  // the (0,1,2) piece carries seams between the two frontier curves and
  // self arcs at each
  auto arcs = enumerate_arcs(cc, with_two_frontiers, 16);
  bool seam = false, self_a = false;
  for (const auto& a : arcs) {
    if (a.curve_a != a.curve_b) seam = true;
    if (a.curve_a == a.curve_b) self_a = true;
  }
  CHECK(seam);
  CHECK(self_a);
}

TEST_CASE("arc lengths ignore twisting along the frontier") {
  auto T = default_triangulation(make_surface(0, 5));
  auto curves = enumerate_curves(T, 6);
  auto pairs = enumerate_multicurves(curves, 2);
  auto& pr = pairs.front();
  CurveClass c0 = curves[pr[0]], c1 = curves[pr[1]];
  CutComplex cc(T, {c0, c1});
  MappingClass tw = twist_about(c0);
  auto m = symmetric_structure(T);
  RealWeights x = m.x;
  for (int n = 0; n < 3; ++n) x = tw.apply_shears(x);
  ShearStructure m3{T, x};
  for (int r = 0; r < cc.num_regions(); ++r) {
    for (const auto& a : enumerate_arcs(cc, r, 12, 8)) {
      double before = arc_length(m, cc, a);
      double after = arc_length(m3, cc, a);
      // twisting along the cut system is invisible to the pieces
      CHECK(after == doctest::Approx(before).epsilon(1e-7));
    }
  }
}

TEST_CASE("arc-curve relation distinguishes crossing from disjoint") {
  auto T = default_triangulation(make_surface(0, 5));
  auto curves = enumerate_curves(T, 6);
  // cut along one curve; the 3-punctured side carries both another disjoint
  // curve and arcs crossing it
  for (const auto& c : curves) {
    CutComplex cc(T, {c});
    // find a curve disjoint from c
    const CurveClass* other = nullptr;
    for (const auto& d : curves)
      if (!(d.w == c.w) && intersection_number(c, d) == 0) {
        other = &d;
        break;
      }
    if (!other) continue;
    int r = cc.region_of(*other);
    auto arcs = enumerate_arcs(cc, r, 14);
    REQUIRE(!arcs.empty());
    int crossing = 0, disjoint_n = 0;
    for (const auto& a : arcs) {
      auto rel = arc_curve_relation(cc, a, *other, 20);
      if (rel == ArcCurveRelation::crossing) ++crossing;
      else ++disjoint_n;
    }
    // self arcs at the cut curve around the inner punctures exist on both
    // sides of `other`, so both relations must occur
    CHECK(crossing > 0);
    CHECK(disjoint_n > 0);
    return;
  }
  FAIL("no disjoint pair found");
}
