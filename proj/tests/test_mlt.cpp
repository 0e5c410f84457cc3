#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bers/builders.hpp"
#include "bers/enumerate.hpp"
#include "bers/intersection.hpp"
#include "bers/mlt.hpp"

using namespace bers;

TEST_CASE("twist sequence on S(0,5): single closed layer, bounded pieces") {
  auto T = default_triangulation(make_surface(0, 5));
  auto curves = enumerate_curves(T, 4);
  const CurveClass& d = curves[1];
  MappingClass td = twist_about(d);
  td.set_name("T_d");
  TeichSequence seq{symmetric_structure(T), {{td, 1}}, "T_d^i"};
  MltConfig cfg;
  cfg.limit.i_max = 20;
  auto res = multi_layered_limit(seq, cfg);
  REQUIRE(res.layers.size() == 1);
  REQUIRE(res.layers[0].components.size() == 1);
  const auto& comp = res.layers[0].components[0];
  CHECK(comp.kind == LayerComponent::Kind::closed_curve);
  CHECK(comp.curve->w == d.w);
  // cutting along d leaves two bounded pieces
  CHECK(res.final_pieces.size() == 2);
  // unions: all three equal {d}
  CHECK(res.core.curves.size() == 1);
  CHECK(res.core.laminations.empty());
  CHECK(res.intermediate.curves.size() == 1);
  CHECK(res.extended.curves.size() == 1);
  CHECK(res.core.curves[0].w == d.w);
}

TEST_CASE("full pseudo-Anosov on S(1,1): single filling layer") {
  auto T = default_triangulation(make_surface(1, 1));
  Weights wa(3), wb(3);
  wa << 0, 1, 1;
  wb << 1, 0, 1;
  TwistFamily fam({*canonicalize(T, wa).curve, *canonicalize(T, wb).curve});
  MappingClass f = fam.word({{0, 1}, {1, -1}});
  f.set_name("golden");
  TeichSequence seq{symmetric_structure(T), {{f, 1}}, "golden^i"};
  MltConfig cfg;
  cfg.limit.i_max = 30;
  auto res = multi_layered_limit(seq, cfg);
  REQUIRE(res.layers.size() == 1);
  REQUIRE(res.layers[0].components.size() == 1);
  const auto& comp = res.layers[0].components[0];
  CHECK(comp.kind == LayerComponent::Kind::irrational);
  // filling: the supporting surface is everything, no frontier
  CHECK(comp.support_frontier.empty());
  CHECK(comp.support_sig == T->surface());
  CHECK(res.final_pieces.empty());
  // core = intermediate = extended = the lamination alone
  CHECK(res.core.laminations.size() == 1);
  CHECK(res.core.curves.empty());
  CHECK(res.intermediate.curves.empty());
  CHECK(res.extended.curves.empty());
}

TEST_CASE("partial pseudo-Anosov on S(1,2): lamination layer with frontier") {
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
  f.set_name("partial");
  TeichSequence seq{symmetric_structure(T), {{f, 1}}, "partial^i"};
  MltConfig cfg;
  cfg.limit.i_max = 30;
  auto res = multi_layered_limit(seq, cfg);
  REQUIRE(res.layers.size() == 1);
  const auto& comps = res.layers[0].components;
  REQUIRE(comps.size() == 1);
  CHECK(comps[0].kind == LayerComponent::Kind::irrational);
  CHECK(comps[0].support_sig == SurfaceType{1, 0, 1});
  REQUIRE(comps[0].support_frontier.size() == 1);
  // the complement piece (0,2,1) remains bounded
  REQUIRE(res.final_pieces.size() == 1);
  CHECK(res.final_pieces[0] == SurfaceType{0, 2, 1});
  // intermediate = lamination + frontier curve; core = lamination alone
  CHECK(res.core.curves.empty());
  CHECK(res.core.laminations.size() == 1);
  CHECK(res.intermediate.curves.size() == 1);
  CHECK(res.intermediate.curves[0].w == comps[0].support_frontier[0].w);
  // no arcs anywhere: extended = intermediate
  CHECK(res.extended.curves.size() == res.intermediate.curves.size());

  // sandwich check: the end invariant with the frontier as parabolic and the
  // lamination as ending passes both containments
  EndInvariant target;
  target.tri = T;
  target.parabolics = {comps[0].support_frontier[0]};
  target.endings.push_back(
      {*comps[0].lamination, comps[0].support_frontier, comps[0].support_sig});
  auto v = sandwich_check(res, target);
  CHECK(v.lower_ok);
  CHECK(v.upper_ok);
  // dropping the parabolic breaks the lower containment
  EndInvariant bare = target;
  bare.parabolics.clear();
  auto v2 = sandwich_check(res, bare);
  CHECK(!v2.lower_ok);
  CHECK(v2.upper_ok);
}

TEST_CASE("multi-twist on S(0,5): two-curve layer") {
  auto T = default_triangulation(make_surface(0, 5));
  auto curves = enumerate_curves(T, 6);
  auto pairs = enumerate_multicurves(curves, 2);
  REQUIRE(!pairs.empty());
  const CurveClass& c = curves[pairs[0][0]];
  const CurveClass& d = curves[pairs[0][1]];
  TwistFamily famc({c});
  TwistFamily famd({d});
  MappingClass w = famc.twist(0).then(famd.twist(0));
  w.set_name("T_c T_d");
  TeichSequence seq{symmetric_structure(T), {{w, 1}}, "(T_c T_d)^i"};
  MltConfig cfg;
  cfg.limit.i_max = 20;
  auto res = multi_layered_limit(seq, cfg);
  REQUIRE(res.layers.size() == 1);
  CHECK(res.layers[0].components.size() == 2);
  for (const auto& comp : res.layers[0].components) {
    CHECK(comp.kind == LayerComponent::Kind::closed_curve);
    CHECK((comp.curve->w == c.w || comp.curve->w == d.w));
  }
  // three bounded pants pieces remain
  CHECK(res.final_pieces.size() == 3);
}
