#include "bers/stable.hpp"

#include <cmath>

#include "bers/enumerate.hpp"
#include "bers/intersection.hpp"

namespace bers {

double projective_gap(const RealWeights& a, const RealWeights& b) {
  double na = a.cwiseAbs().maxCoeff(), nb = b.cwiseAbs().maxCoeff();
  if (na == 0 || nb == 0) return (na == nb) ? 0.0 : 1.0;
  return (a / na - b / nb).cwiseAbs().maxCoeff();
}

namespace {

// Linear branch of the tropical transport active at v, as an E x E matrix.
Eigen::MatrixXd branch_matrix(const MappingClass& f, const RealWeights& v) {
  int E = static_cast<int>(v.size());
  Eigen::MatrixXd M = Eigen::MatrixXd::Identity(E, E);
  RealWeights w = v;
  // replay the flip word on the base chart, picking the active branch at
  // each flip
  IdealTriangulation cur = *f.base();
  for (int e : f.flips()) {
    const auto& en = cur.ends(e);
    int t = en[0].tri, k = en[0].side, tp = en[1].tri, kp = en[1].side;
    int p = cur.tri(t).edge[(k + 1) % 3], q = cur.tri(t).edge[(k + 2) % 3];
    int r = cur.tri(tp).edge[(kp + 1) % 3], s = cur.tri(tp).edge[(kp + 2) % 3];
    double a = w[p] + w[r], b = w[q] + w[s];
    Eigen::RowVectorXd row = (a >= b) ? (M.row(p) + M.row(r)).eval()
                                      : (M.row(q) + M.row(s)).eval();
    row -= M.row(e);
    M.row(e) = row;
    w[e] = std::max(a, b) - w[e];
    cur = cur.flipped(e);
  }
  const auto& sigma = f.relabel();
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(E, E);
  for (int e = 0; e < E; ++e) P(sigma[e], e) = 1.0;
  return P * M;
}

struct OrbitResult {
  RealWeights fixed;
  double growth;
};

OrbitResult projective_orbit(const MappingClass& f,
                             const std::vector<CurveClass>& seeds,
                             const PFConfig& cfg) {
  int E = f.base()->num_edges();
  const double phi = 0.5 * (1.0 + std::sqrt(5.0));
  RealWeights v = RealWeights::Zero(E);
  double coeff = 1.0;
  for (size_t k = 0; k < seeds.size() && k < 6; ++k, coeff /= phi)
    v += coeff * seeds[k].w.cast<double>();
  require(v.maxCoeff() > 0, errc::bad_input, "empty seed family");
  v /= v.maxCoeff();
  double growth = 0.0;
  for (int it = 0; it < cfg.max_iterations; ++it) {
    RealWeights next = f.apply(v);
    double norm = next.maxCoeff();
    require(norm > 0, errc::reducible_or_periodic,
            "orbit collapsed to the zero vector");
    growth = norm;
    next /= norm;
    if ((next - v).cwiseAbs().maxCoeff() < cfg.vector_tol)
      return {next, growth};
    v = next;
  }
  fail(errc::reducible_or_periodic,
       "projective iteration did not converge (periodic or reducible)");
}

}  // namespace

StableLamination stable_lamination(const MappingClass& f, const PFConfig& cfg) {
  int E = f.base()->num_edges();
  std::vector<CurveClass> probes;
  for (std::int64_t cap = 2; probes.size() < 2 && cap <= 16; cap *= 2)
    probes = enumerate_curves(f.base(), std::max(cap, cfg.probe_cap));

  OrbitResult plus = projective_orbit(f, probes, cfg);
  require(plus.growth > 1.0 + 1e-9, errc::reducible_or_periodic,
          "no exponential growth; class is reducible or periodic");
  MappingClass finv = f.inverse();
  OrbitResult minus = projective_orbit(finv, probes, cfg);
  require(minus.growth > 1.0 + 1e-9, errc::reducible_or_periodic,
          "inverse has no exponential growth");
  require(std::abs(plus.growth - minus.growth) <= 1e-6 * plus.growth,
          errc::reducible_or_periodic,
          "stable and unstable dilatations disagree");
  require(projective_gap(plus.fixed, minus.fixed) > 1e-6,
          errc::reducible_or_periodic,
          "invariant vectors coincide (a twist-like class)");

  StableLamination out;
  out.weights = plus.fixed;
  out.unstable_weights = minus.fixed;
  out.word = f.name();
  out.cls = std::make_shared<MappingClass>(f);
  out.transition = branch_matrix(f, plus.fixed);

  double scale = plus.fixed.maxCoeff();
  for (int e = 0; e < E; ++e)
    if (plus.fixed[e] > 1e-9 * scale) out.active_edges.push_back(e);

  // approximants of the two laminations, kept small enough for the exact
  // intersection routine
  Weights approx_p = probes.front().w, approx_m = probes.front().w;
  {
    Weights na = approx_p, nb = approx_m;
    for (int n = 0; n < 12; ++n) {
      na = f.apply(na);
      nb = finv.apply(nb);
      if (na.sum() + nb.sum() > 1500) break;
      approx_p = na;
      approx_m = nb;
    }
  }

  // the invariant pair must cross
  require(intersection_number(f.base(), approx_p, approx_m) > 0,
          errc::reducible_or_periodic, "invariant laminations do not cross");

  // probes that miss both laminations must miss the support entirely;
  // record them (they generate the complementary pieces)
  for (size_t i = 0; i < probes.size(); ++i) {
    std::int64_t xa = intersection_number(f.base(), probes[i].w, approx_p);
    std::int64_t xb = intersection_number(f.base(), probes[i].w, approx_m);
    if (xa == 0 && xb == 0) {
      // genuinely disjoint from the support: the class must fix it
      require(f.apply(probes[i].w) == probes[i].w,
              errc::reducible_or_periodic,
              "probe disjoint from the pair is moved by the class");
      out.disjoint_probes.push_back(static_cast<int>(i));
    }
  }

  // cone positivity: within the power bound, every crossing probe must
  // acquire full weight on the active edges
  {
    int needed = 0;
    for (size_t i = 0; i < probes.size(); ++i) {
      if (std::find(out.disjoint_probes.begin(), out.disjoint_probes.end(),
                    static_cast<int>(i)) != out.disjoint_probes.end())
        continue;
      Weights w = probes[i].w;
      int k = 0;
      bool full = false;
      while (k < cfg.power_bound) {
        ++k;
        w = f.apply(w);
        bool all = true;
        for (int e : out.active_edges)
          if (w[e] <= 0) {
            all = false;
            break;
          }
        if (all) {
          full = true;
          break;
        }
        if (w.cwiseAbs().maxCoeff() > (std::int64_t(1) << 44)) break;
      }
      require(full, errc::reducible_or_periodic,
              "a probe never spreads over the support (reducible)");
      needed = std::max(needed, k);
    }
    out.positive_power = needed;
  }

  // Rayleigh refinement of the dilatation on the active block
  {
    int n = static_cast<int>(out.active_edges.size());
    Eigen::MatrixXd A(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        A(i, j) = out.transition(out.active_edges[i], out.active_edges[j]);
    Eigen::VectorXd va(n);
    for (int i = 0; i < n; ++i) va[i] = plus.fixed[out.active_edges[i]];
    Eigen::VectorXd Av = A * va;
    out.dilatation = va.dot(Av) / va.dot(va);
  }

  RealWeights img = f.apply(out.weights);
  require(projective_gap(img, out.weights) <= cfg.invariance_tol,
          errc::reducible_or_periodic,
          "fixed vector fails projective invariance");
  require(std::abs(img.maxCoeff() / out.weights.maxCoeff() - out.dilatation) <=
              1e-8 * out.dilatation,
          errc::reducible_or_periodic, "growth and Rayleigh value disagree");
  return out;
}

}  // namespace bers
