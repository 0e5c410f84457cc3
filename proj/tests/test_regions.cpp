#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bers/builders.hpp"
#include "bers/enumerate.hpp"
#include "bers/intersection.hpp"
#include "bers/regions.hpp"
#include "bers/stable.hpp"

using namespace bers;

TEST_CASE("cutting S(0,5) along one separating curve") {
  auto T = default_triangulation(make_surface(0, 5));
  auto curves = enumerate_curves(T, 4);
  REQUIRE(!curves.empty());
  // every curve on a 5-punctured sphere separates 2 from 3 punctures
  for (size_t i = 0; i < std::min<size_t>(curves.size(), 10); ++i) {
    auto pieces = complement_components(T, {curves[i]});
    REQUIRE(pieces.size() == 2);
    std::vector<int> punct = {pieces[0].punctures, pieces[1].punctures};
    std::sort(punct.begin(), punct.end());
    CHECK(punct[0] == 2);
    CHECK(punct[1] == 3);
    CHECK(pieces[0].boundary_curves == 1);
    CHECK(pieces[1].boundary_curves == 1);
    CHECK(pieces[0].genus == 0);
    // Euler characteristic additivity
    CHECK(pieces[0].euler() + pieces[1].euler() == T->surface().euler());
  }
}

TEST_CASE("pants decomposition of S(0,5)") {
  auto T = default_triangulation(make_surface(0, 5));
  auto curves = enumerate_curves(T, 6);
  auto pairs = enumerate_multicurves(curves, 2);
  REQUIRE(!pairs.empty());
  int checked = 0;
  for (const auto& pr : pairs) {
    auto pieces =
        complement_components(T, {curves[pr[0]], curves[pr[1]]});
    // 2g - 2 + p = 3 pants
    REQUIRE(pieces.size() == 3);
    int chi = 0;
    for (const auto& s : pieces) {
      CHECK(s.euler() == -1);
      chi += s.euler();
    }
    CHECK(chi == T->surface().euler());
    if (++checked >= 5) break;
  }
}

TEST_CASE("cutting S(1,2) along a torus-piece frontier") {
  auto T = default_triangulation(make_surface(1, 2));
  auto curves = enumerate_curves(T, 6);
  // find a separating curve: complement has two pieces
  bool found = false;
  for (const auto& c : curves) {
    auto pieces = complement_components(T, {c});
    if (pieces.size() == 2) {
      std::sort(pieces.begin(), pieces.end(),
                [](const SurfaceType& a, const SurfaceType& b) {
                  return a.genus > b.genus;
                });
      if (pieces[0].genus == 1) {
        CHECK(pieces[0].punctures == 0);
        CHECK(pieces[0].boundary_curves == 1);
        CHECK(pieces[1] == SurfaceType{0, 2, 1});
        found = true;
        break;
      }
    }
  }
  CHECK(found);
}

TEST_CASE("nonseparating cut on S(1,2)") {
  auto T = default_triangulation(make_surface(1, 2));
  auto curves = enumerate_curves(T, 6);
  bool found = false;
  for (const auto& c : curves) {
    auto pieces = complement_components(T, {c});
    if (pieces.size() == 1) {
      // genus drops, two boundary circles appear
      CHECK(pieces[0] == SurfaceType{0, 2, 2});
      found = true;
      break;
    }
  }
  CHECK(found);
}

TEST_CASE("minimal support: filling lamination fills") {
  auto T = default_triangulation(make_surface(1, 1));
  Weights wa(3), wb(3);
  wa << 0, 1, 1;
  wb << 1, 0, 1;
  TwistFamily fam({*canonicalize(T, wa).curve, *canonicalize(T, wb).curve});
  MappingClass f = fam.word({{0, 1}, {1, -1}});
  // integral approximant of the stable lamination
  Weights ap = wa;
  for (int i = 0; i < 8; ++i) ap = f.apply(ap);
  auto apc = canonicalize(T, ap);
  REQUIRE(apc.ok());
  auto sup = minimal_support(
      T, *apc.curve,
      [&](const CurveClass& c) {
        return intersection_number(T, c.w, ap) == 0;
      },
      6);
  CHECK(sup.fills_surface);
  CHECK(sup.sig == T->surface());
}

TEST_CASE("minimal support of a partial pseudo-Anosov in S(1,2)") {
  auto T = default_triangulation(make_surface(1, 2));
  auto curves = enumerate_curves(T, 4);
  int na = -1, nb = -1;
  for (size_t i = 0; i < curves.size() && na < 0; ++i)
    for (size_t j = i + 1; j < curves.size(); ++j)
      if (intersection_number(curves[i], curves[j]) == 1) {
        na = static_cast<int>(i);
        nb = static_cast<int>(j);
        break;
      }
  REQUIRE(na >= 0);
  TwistFamily fam({curves[na], curves[nb]});
  MappingClass f = fam.word({{0, 1}, {1, -1}});
  Weights ap = curves[na].w;
  for (int i = 0; i < 9; ++i) ap = f.apply(ap);
  auto apc = canonicalize(T, ap);
  REQUIRE(apc.ok());
  Weights ap2 = f.apply(ap);
  auto sup = minimal_support(
      T, *apc.curve,
      [&](const CurveClass& c) {
        return intersection_number(T, c.w, ap) == 0 &&
               intersection_number(T, c.w, ap2) == 0;
      },
      6);
  CHECK(!sup.fills_surface);
  CHECK(sup.sig == SurfaceType{1, 0, 1});
  REQUIRE(sup.frontier.size() == 1);
  // the frontier misses the lamination and the generators fix it
  CHECK(intersection_number(T, sup.frontier[0].w, ap) == 0);
  CHECK(f.apply(sup.frontier[0].w) == sup.frontier[0].w);
}
