#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "bers/intersection.hpp"
#include "bers/mapping_class.hpp"
#include "bers/shear.hpp"
#include "bers/enumerate.hpp"

using namespace bers;

namespace {

Weights wv(TriPtr T, std::initializer_list<std::int64_t> v) {
  Weights w(T->num_edges());
  int i = 0;
  for (auto x : v) w[i++] = x;
  REQUIRE(i == T->num_edges());
  return w;
}

CurveClass curve(TriPtr T, std::initializer_list<std::int64_t> v) {
  auto r = canonicalize(T, wv(T, v));
  REQUIRE(r.ok());
  return *r.curve;
}

}  // namespace

TEST_CASE("surface signatures") {
  auto s = make_surface(0, 5);
  CHECK(s.xi() == 5);
  CHECK(s.teich_dim() == 4);
  s = make_surface(1, 2);
  CHECK(s.xi() == 5);
  CHECK(s.teich_dim() == 4);
  CHECK_THROWS_AS(make_surface(1, 0), error);
  CHECK_THROWS_AS(make_surface(0, 3), error);
}

TEST_CASE("default triangulations") {
  auto t11 = default_triangulation(make_surface(1, 1));
  CHECK(t11->num_triangles() == 2);
  CHECK(t11->num_edges() == 3);
  CHECK(t11->num_vertices() == 1);

  auto t05 = default_triangulation(make_surface(0, 5));
  CHECK(t05->num_triangles() == 6);
  CHECK(t05->num_edges() == 9);
  CHECK(t05->num_vertices() == 5);

  auto t12 = default_triangulation(make_surface(1, 2));
  CHECK(t12->num_triangles() == 4);
  CHECK(t12->num_edges() == 6);
  CHECK(t12->num_vertices() == 2);

  auto t07 = default_triangulation(make_surface(0, 7));
  CHECK(t07->num_triangles() == 10);
  CHECK(t07->num_edges() == 15);
  CHECK(t07->num_vertices() == 7);
}

TEST_CASE("canonicalize on the punctured torus") {
  auto T = default_triangulation(make_surface(1, 1));
  auto r = canonicalize(T, wv(T, {0, 1, 1}));
  CHECK(r.ok());
  CHECK(r.curve->gates.size() == 2);

  r = canonicalize(T, wv(T, {0, 0, 0}));
  CHECK(r.reject == RejectReason::empty);
  r = canonicalize(T, wv(T, {1, 1, 1}));
  CHECK(r.reject == RejectReason::matching_violation);
  // the puncture link
  Weights link = T->peripheral_weights(0);
  CHECK(link == wv(T, {2, 2, 2}));
  r = canonicalize(T, link);
  CHECK(r.reject == RejectReason::peripheral);
  // doubled curve
  r = canonicalize(T, wv(T, {0, 2, 2}));
  CHECK(r.reject == RejectReason::not_connected);
  // canonicalize is idempotent on its output
  auto c = curve(T, {2, 1, 1});
  auto again = canonicalize(T, c.w);
  CHECK(again.ok());
  CHECK(again.curve->w == c.w);
}

TEST_CASE("intersection numbers on the punctured torus") {
  auto T = default_triangulation(make_surface(1, 1));
  auto a = curve(T, {0, 1, 1});
  auto b = curve(T, {1, 0, 1});
  auto c = curve(T, {1, 1, 0});
  CHECK(intersection_number(a, a) == 0);
  CHECK(intersection_number(a, b) == 1);
  CHECK(intersection_number(b, a) == 1);
  CHECK(intersection_number(a, c) == 1);
  CHECK(intersection_number(b, c) == 1);
  // (2,1,1) is the slope with i = 1, 2 against the others
  auto d = curve(T, {2, 1, 1});
  CHECK(intersection_number(d, a) == 2);
  CHECK(intersection_number(d, b) == 1);
  CHECK(intersection_number(d, c) == 1);
  CHECK(!disjoint(T, a.w, b.w));
  CHECK(disjoint(T, a.w, a.w));
}

TEST_CASE("flip transport matches Farey arithmetic") {
  auto T = default_triangulation(make_surface(1, 1));
  // flipping edge 0 turns both triangles (0,1,2) into (2,1,0); swapping the
  // labels 0 and 2 returns the table, so flip+swap is a mapping class
  MappingClass f0(T, {0}, {2, 1, 0});
  Weights w = wv(T, {0, 1, 1});
  Weights img = f0.apply(w);
  // tropical: new weight on the flipped edge is max(2*1, 2*1) - 0 = 2,
  // then the swap moves it to slot 2
  CHECK(img == wv(T, {1, 1, 2}));
  // group structure: f0 * f0^-1 = id on curves
  auto roundtrip = f0.then(f0.inverse()).apply(w);
  CHECK(roundtrip == w);
  // intersection numbers are preserved
  auto a = curve(T, {0, 1, 1});
  auto b = curve(T, {1, 0, 1});
  auto fa = f0.apply(a);
  auto fb = f0.apply(b);
  CHECK(intersection_number(fa, fb) == intersection_number(a, b));
  // flip twice with identity relabel = identity transport
  MappingClass f00(T, {0, 0}, {0, 1, 2});
  CHECK(f00.apply(w) == w);
}

TEST_CASE("holonomy at the symmetric point of S(1,1)") {
  auto T = default_triangulation(make_surface(1, 1));
  auto m = symmetric_structure(T);
  CHECK(completeness_defect(m) == 0.0);
  // puncture link is parabolic
  Trace link = trace_weights(*T, T->peripheral_weights(0));
  REQUIRE(link.components.size() == 1);
  CHECK(link.components[0].peripheral);
  ScaledMat h = holonomy(m, link.components[0].gates);
  double tr = (h.m(0, 0) + h.m(1, 1)) * std::exp(h.log_scale);
  CHECK(std::abs(std::abs(tr) - 2.0) < 1e-12);

  // all three systoles have |trace| 3, length 2 arccosh(3/2)
  for (auto v : {wv(T, {0, 1, 1}), wv(T, {1, 0, 1}), wv(T, {1, 1, 0})}) {
    auto c = canonicalize(T, v);
    REQUIRE(c.ok());
    ScaledMat hc = holonomy(m, c.curve->gates);
    double trc = (hc.m(0, 0) + hc.m(1, 1)) * std::exp(hc.log_scale);
    CHECK(std::abs(std::abs(trc) - 3.0) < 1e-12);
    CHECK(geodesic_length(m, *c.curve) ==
          doctest::Approx(1.9248473002384139).epsilon(1e-12));
    CHECK(hc.det_residual() < 1e-12);
  }
}

TEST_CASE("flips preserve length without relabeling") {
  // flipping is a change of chart: transporting both the metric and the
  // curve leaves every length unchanged
  auto T = default_triangulation(make_surface(0, 5));
  std::vector<int> idp(T->num_edges());
  std::iota(idp.begin(), idp.end(), 0);
  // random-ish complete shears: assign then project to the completeness space
  RealWeights x = RealWeights::Zero(T->num_edges());
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> U(-0.8, 0.8);
  for (int e = 0; e < x.size(); ++e) x[e] = U(rng);
  // project: subtract vertex sums greedily via least squares on the link map
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(T->num_vertices(), T->num_edges());
  for (int v = 0; v < T->num_vertices(); ++v)
    for (auto [t, c] : T->links()[v]) A(v, T->tri(t).edge[c]) += 1.0;
  x -= A.transpose() * (A * A.transpose()).ldlt().solve(A * x);
  ShearStructure m{T, x};
  REQUIRE(completeness_defect(m) < 1e-12);

  // a few small curves
  std::vector<Weights> curves;
  for (const auto& c : enumerate_curves(T, 2)) {
    curves.push_back(c.w);
    if (curves.size() >= 4) break;
  }
  REQUIRE(!curves.empty());
  // transport through a flip by hand and compare lengths
  for (int e = 0; e < T->num_edges(); ++e) {
    if (!T->flippable(e)) continue;
    auto flipped = std::make_shared<IdealTriangulation>(T->flipped(e));
    // tropical/cluster transport for one flip
    const auto& en = T->ends(e);
    int t = en[0].tri, k = en[0].side, tp = en[1].tri, kp = en[1].side;
    int p = T->tri(t).edge[(k + 1) % 3], q = T->tri(t).edge[(k + 2) % 3];
    int r = T->tri(tp).edge[(kp + 1) % 3], s = T->tri(tp).edge[(kp + 2) % 3];
    RealWeights x2 = x;
    double xe = x2[e];
    auto softplus = [](double u) {
      return u > 36 ? u : (u < -36 ? 0.0 : std::log1p(std::exp(u)));
    };
    x2[p] -= softplus(-xe);
    x2[r] -= softplus(-xe);
    x2[q] += softplus(xe);
    x2[s] += softplus(xe);
    x2[e] = -xe;
    ShearStructure m2{flipped, x2};
    CHECK(completeness_defect(m2) < 1e-9);
    for (const Weights& cw : curves) {
      Weights cw2 = cw;
      cw2[e] = std::max(cw[p] + cw[r], cw[q] + cw[s]) - cw[e];
      auto c1 = canonicalize(T, cw);
      auto c2 = canonicalize(flipped, cw2);
      REQUIRE(c1.ok());
      REQUIRE(c2.ok());
      double l1 = geodesic_length(m, *c1.curve);
      double l2 = geodesic_length(m2, *c2.curve);
      CHECK(l1 == doctest::Approx(l2).epsilon(1e-9));
    }
  }
}
