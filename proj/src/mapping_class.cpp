#include "bers/mapping_class.hpp"

#include <cmath>
#include <numeric>

namespace bers {

MappingClass MappingClass::identity(TriPtr base) {
  std::vector<int> id(base->num_edges());
  std::iota(id.begin(), id.end(), 0);
  return MappingClass(std::move(base), {}, std::move(id), "id");
}

MappingClass::MappingClass(TriPtr base, std::vector<int> flips,
                           std::vector<int> relabel, std::string name)
    : base_(std::move(base)),
      flips_(std::move(flips)),
      relabel_(std::move(relabel)),
      name_(std::move(name)) {
  require(static_cast<int>(relabel_.size()) == base_->num_edges(),
          errc::bad_input, "relabel must be a permutation of the edges");
  std::vector<char> seen(relabel_.size(), 0);
  for (size_t e = 0; e < relabel_.size(); ++e) {
    int img = relabel_[e];
    require(img >= 0 && img < static_cast<int>(relabel_.size()) && !seen[img],
            errc::bad_input, "relabel must be a permutation of the edges");
    seen[img] = 1;
    if (img != static_cast<int>(e)) relabel_is_id_ = false;
  }
  compile();
}

void MappingClass::compile() {
  steps_.clear();
  IdealTriangulation cur = *base_;
  for (int e : flips_) {
    require(cur.flippable(e), errc::invalid_flip,
            "flip word hits unflippable edge " + std::to_string(e));
    const auto& en = cur.ends(e);
    int t = en[0].tri, k = en[0].side;
    int tp = en[1].tri, kp = en[1].side;
    FlipStep st;
    st.e = e;
    st.p = cur.tri(t).edge[(k + 1) % 3];
    st.q = cur.tri(t).edge[(k + 2) % 3];
    st.r = cur.tri(tp).edge[(kp + 1) % 3];
    st.s = cur.tri(tp).edge[(kp + 2) % 3];
    steps_.push_back(st);
    cur = cur.flipped(e);
  }
  // renaming the final chart by `relabel` must restore the base table
  std::vector<Triangle> renamed = cur.triangles();
  for (Triangle& t : renamed)
    for (int& e : t.edge) e = relabel_[e];
  IdealTriangulation final_chart(base_->surface(), std::move(renamed));
  require(final_chart.same_tables(*base_), errc::bad_input,
          "flip word + relabel do not return to the base triangulation");
}

namespace {

template <class Vec>
void tropical_steps(const std::vector<FlipStep>& steps, Vec& w) {
  for (const FlipStep& st : steps) {
    auto diag = std::max(w[st.p] + w[st.r], w[st.q] + w[st.s]);
    w[st.e] = diag - w[st.e];
  }
}

template <class Vec>
Vec permute(const std::vector<int>& relabel, const Vec& w) {
  Vec out(w.size());
  for (int e = 0; e < w.size(); ++e) out[relabel[e]] = w[e];
  return out;
}

double softplus(double u) {
  if (u > 36.0) return u;
  if (u < -36.0) return 0.0;
  return std::log1p(std::exp(u));
}

}  // namespace

Weights MappingClass::apply(const Weights& w) const {
  require(w.size() == base_->num_edges(), errc::surface_mismatch,
          "weight vector lives on a different chart");
  Weights v = w;
  tropical_steps(steps_, v);
  return relabel_is_id_ ? v : permute(relabel_, v);
}

RealWeights MappingClass::apply(const RealWeights& w) const {
  require(w.size() == base_->num_edges(), errc::surface_mismatch,
          "weight vector lives on a different chart");
  RealWeights v = w;
  tropical_steps(steps_, v);
  return relabel_is_id_ ? v : permute(relabel_, v);
}

CurveClass MappingClass::apply(const CurveClass& c) const {
  auto res = canonicalize(c.tri, apply(c.w));
  require(res.ok(), errc::bad_input,
          "mapping class image failed to canonicalize");
  return *res.curve;
}

RealWeights MappingClass::apply_shears(const RealWeights& x) const {
  require(x.size() == base_->num_edges(), errc::surface_mismatch,
          "shear vector lives on a different chart");
  RealWeights v = x;
  for (const FlipStep& st : steps_) {
    // cluster X-mutation at st.e: ccw successors pick up -softplus(-x_e),
    // ccw predecessors +softplus(x_e)
    double xe = v[st.e];
    double plus = softplus(xe), minus = softplus(-xe);
    v[st.p] -= minus;
    v[st.r] -= minus;
    v[st.q] += plus;
    v[st.s] += plus;
    v[st.e] = -xe;
  }
  return relabel_is_id_ ? v : permute(relabel_, v);
}

MappingClass MappingClass::then(const MappingClass& next) const {
  require(next.base_->num_edges() == base_->num_edges(), errc::surface_mismatch,
          "composed classes must share a chart");
  // renaming commutes with later flips: a flip of f after renaming by sigma
  // equals a flip of sigma^-1(f) before it
  std::vector<int> inv(relabel_.size());
  for (size_t e = 0; e < relabel_.size(); ++e) inv[relabel_[e]] = static_cast<int>(e);
  std::vector<int> flips = flips_;
  for (int f : next.flips_) flips.push_back(inv[f]);
  std::vector<int> relabel(relabel_.size());
  for (size_t e = 0; e < relabel_.size(); ++e)
    relabel[e] = next.relabel_[relabel_[e]];
  std::string nm;
  if (!name_.empty() || !next.name_.empty())
    nm = next.name_.empty() ? name_ : (name_.empty() ? next.name_ : name_ + "*" + next.name_);
  return MappingClass(base_, std::move(flips), std::move(relabel), std::move(nm));
}

MappingClass MappingClass::inverse() const {
  std::vector<int> flips;
  for (auto it = flips_.rbegin(); it != flips_.rend(); ++it)
    flips.push_back(relabel_[*it]);
  std::vector<int> inv(relabel_.size());
  for (size_t e = 0; e < relabel_.size(); ++e) inv[relabel_[e]] = static_cast<int>(e);
  std::string nm = name_.empty() ? std::string() : name_ + "^-1";
  return MappingClass(base_, std::move(flips), std::move(inv), std::move(nm));
}

MappingClass MappingClass::power(int n) const {
  if (n < 0) return inverse().power(-n);
  MappingClass acc = identity(base_);
  for (int i = 0; i < n; ++i) acc = acc.then(*this);
  if (!name_.empty()) acc.set_name(name_ + "^" + std::to_string(n));
  return acc;
}

}  // namespace bers
