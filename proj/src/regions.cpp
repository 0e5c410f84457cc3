#include "bers/regions.hpp"

#include <numeric>

#include "bers/enumerate.hpp"
#include "bers/intersection.hpp"

namespace bers {

int CutComplex::find(int x) const {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

void CutComplex::unite(int a, int b) {
  a = find(a);
  b = find(b);
  if (a != b) parent_[a] = b;
}

int CutComplex::corner_cell(int t, int v, std::int64_t k) const {
  return static_cast<int>(corner_offset_[t][v] + k);
}

int CutComplex::interval_cell(int t, int j, std::int64_t i) const {
  const auto& m = corner_counts_[t];
  if (i < m[j]) return corner_cell(t, j, i);
  std::int64_t w = m[j] + m[(j + 1) % 3];
  if (i == m[j]) return central_[t];
  return corner_cell(t, (j + 1) % 3, w - i);
}

int CutComplex::crossing_owner(int e, std::int64_t pos) const {
  auto it = owner_[e].find(pos);
  require(it != owner_[e].end(), errc::bad_input, "unknown crossing");
  return it->second;
}

CutComplex::CutComplex(TriPtr T, std::vector<CurveClass> system)
    : tri_(std::move(T)), system_(std::move(system)) {
  const IdealTriangulation& tr = *tri_;
  int E = tr.num_edges(), F = tr.num_triangles();
  weights_ = Weights::Zero(E);
  for (const auto& c : system_) {
    require(c.w.size() == E, errc::surface_mismatch, "curve on wrong chart");
    weights_ += c.w;
  }
  for (size_t i = 0; i < system_.size(); ++i)
    for (size_t j = i + 1; j < system_.size(); ++j)
      require(!(system_[i].w == system_[j].w), errc::overlap,
              "system members must be distinct");

  // trace the union and attribute crossings to the components
  owner_.assign(E, {});
  components_.resize(system_.size());
  if (weights_.sum() > 0) {
    Trace trace = trace_weights(tr, weights_);
    for (const auto& comp : trace.components) {
      require(!comp.peripheral, errc::overlap,
              "system decomposes with peripheral parts; members intersect");
      int who = -1;
      for (size_t i = 0; i < system_.size(); ++i)
        if (system_[i].w == comp.weights) who = static_cast<int>(i);
      require(who >= 0, errc::overlap,
              "system members are not disjoint (union re-decomposed)");
      for (auto [e, pos] : comp.crossings) owner_[e][pos] = who;
      components_[who] = comp;
    }
  }

  // cells
  corner_counts_.resize(F);
  corner_offset_.resize(F);
  central_.resize(F);
  num_cells_ = 0;
  for (int t = 0; t < F; ++t) {
    const auto& e = tr.tri(t).edge;
    corner_counts_[t] = *corner_counts<std::int64_t>(
        weights_[e[0]], weights_[e[1]], weights_[e[2]]);
    for (int v = 0; v < 3; ++v) {
      corner_offset_[t][v] = num_cells_;
      num_cells_ += static_cast<int>(corner_counts_[t][v]);
    }
    central_[t] = num_cells_++;
  }
  parent_.resize(num_cells_);
  std::iota(parent_.begin(), parent_.end(), 0);

  // glue cells across edge intervals
  for (int e = 0; e < E; ++e) {
    const auto& en = tr.ends(e);
    std::int64_t w = weights_[e];
    for (std::int64_t i = 0; i <= w; ++i)
      unite(interval_cell(en[0].tri, en[0].side, i),
            interval_cell(en[1].tri, en[1].side, w - i));
  }

  // region ids
  region_id_.assign(num_cells_, -1);
  int nr = 0;
  for (int c = 0; c < num_cells_; ++c)
    if (find(c) == c) region_id_[c] = nr++;
  regions_.assign(nr, {});
  for (int c = 0; c < num_cells_; ++c)
    regions_[region_id_[find(c)]].cells.push_back(c);

  // punctures
  puncture_region_.assign(tr.num_vertices(), -1);
  for (int v = 0; v < tr.num_vertices(); ++v) {
    for (auto [t, c] : tr.links()[v]) {
      if (corner_counts_[t][c] == 0) continue;  // sector merged with central
      int r = cell_region(corner_cell(t, c, 0));
      require(puncture_region_[v] < 0 || puncture_region_[v] == r,
              errc::bad_input, "puncture region inconsistent");
      puncture_region_[v] = r;
    }
    if (puncture_region_[v] < 0) {
      auto [t, c] = tr.links()[v][0];
      puncture_region_[v] = cell_region(central_[t]);
    }
    regions_[puncture_region_[v]].punctures.push_back(v);
  }

  // frontier adjacency: the left/right sides of each component
  curve_sides_.assign(system_.size(), {-1, -1});
  if (weights_.sum() > 0) {
    for (size_t who_idx = 0; who_idx < system_.size(); ++who_idx) {
      const TraceComponent& comp = components_[who_idx];
      int who = static_cast<int>(who_idx);
      // the arc of gate g sits at a corner; its near cell is the hugged
      // corner side, which is the left side iff the turn is left
      const Gate& g = comp.gates.front();
      auto [e0, pos0] = comp.crossings.front();
      // position along the entered side of g.tri
      std::int64_t side_pos =
          (tri_->ends(e0)[0] == EdgeEnd{g.tri, g.in_side})
              ? pos0
              : weights_[e0] - 1 - pos0;
      int near_cell, far_cell;
      if (g.left_turn()) {
        // corner at vertex-slot in_side, depth = side_pos
        std::int64_t depth = side_pos;
        near_cell = corner_cell(g.tri, g.in_side, depth);
        far_cell = (depth + 1 < corner_counts_[g.tri][g.in_side])
                       ? corner_cell(g.tri, g.in_side, depth + 1)
                       : central_[g.tri];
      } else {
        // corner at vertex-slot in_side+1, depth = w - 1 - side_pos
        int v = (g.in_side + 1) % 3;
        std::int64_t depth = weights_[e0] - 1 - side_pos;
        near_cell = corner_cell(g.tri, v, depth);
        far_cell = (depth + 1 < corner_counts_[g.tri][v])
                       ? corner_cell(g.tri, v, depth + 1)
                       : central_[g.tri];
      }
      int left = g.left_turn() ? cell_region(near_cell) : cell_region(far_cell);
      int right = g.left_turn() ? cell_region(far_cell) : cell_region(near_cell);
      curve_sides_[who] = {left, right};
      regions_[left].frontier.push_back({who, 1});
      if (right == left) {
        regions_[left].frontier.back().second = 2;
      } else {
        regions_[right].frontier.push_back({who, 1});
      }
    }
  }

  // signatures: chi of the filled bordered region = punctures + cells -
  // edge intervals
  std::vector<std::int64_t> interval_count(nr, 0);
  for (int e = 0; e < E; ++e) {
    const auto& en = tr.ends(e);
    std::int64_t w = weights_[e];
    for (std::int64_t i = 0; i <= w; ++i) {
      int r = cell_region(interval_cell(en[0].tri, en[0].side, i));
      interval_count[r] += 1;
    }
  }
  for (int r = 0; r < nr; ++r) {
    Region& R = regions_[r];
    int b = 0;
    for (auto [k, mult] : R.frontier) b += mult;
    std::int64_t chi_filled = static_cast<std::int64_t>(R.punctures.size()) +
                              static_cast<std::int64_t>(R.cells.size()) -
                              interval_count[r];
    std::int64_t genus2 = 2 - b - chi_filled;
    require(genus2 >= 0 && genus2 % 2 == 0, errc::bad_input,
            "region Euler characteristic is inconsistent");
    R.sig = SurfaceType{static_cast<int>(genus2 / 2),
                        static_cast<int>(R.punctures.size()), b};
  }
}

int CutComplex::region_of(const CurveClass& c) const {
  for (const auto& s : system_)
    require(!(s.w == c.w), errc::bad_input,
            "curve is a member of the system");
  Weights u = weights_ + c.w;
  Trace trace = trace_weights(*tri_, u);
  for (const auto& comp : trace.components) {
    if (!(comp.weights == c.w)) continue;
    auto [e, pos] = comp.crossings.front();
    // count system strands on e below this crossing in the union trace
    std::int64_t below = 0;
    for (const auto& comp2 : trace.components) {
      if (&comp2 == &comp) continue;
      for (auto [e2, pos2] : comp2.crossings)
        if (e2 == e && pos2 < pos) ++below;
    }
    const auto& en = tri_->ends(e);
    return cell_region(interval_cell(en[0].tri, en[0].side, below));
  }
  fail(errc::bad_input, "curve does not appear in the union trace");
}

std::vector<SurfaceType> complement_components(
    TriPtr T, const std::vector<CurveClass>& system) {
  CutComplex cc(std::move(T), system);
  std::vector<SurfaceType> out;
  for (const auto& R : cc.regions()) out.push_back(R.sig);
  return out;
}

SupportResult minimal_support(
    TriPtr T, const CurveClass& inside,
    const std::function<bool(const CurveClass&)>& disjoint_from,
    std::int64_t enumeration_cap) {
  // curves missing the lamination, by increasing weight; they must also be
  // exactly disjoint from the inside marker so the region lookup is defined
  std::vector<CurveClass> candidates;
  for (const auto& c : enumerate_curves(T, enumeration_cap))
    if (!(c.w == inside.w) && disjoint_from(c) &&
        intersection_number(c, inside) == 0)
      candidates.push_back(c);
  std::sort(candidates.begin(), candidates.end(),
            [](const CurveClass& a, const CurveClass& b) {
              auto ta = a.w.sum(), tb = b.w.sum();
              return ta != tb ? ta < tb : a < b;
            });
  // greedy maximal disjoint family; any maximal family realizes the support
  // as the region containing the lamination
  std::vector<CurveClass> family;
  for (const auto& c : candidates) {
    bool ok = true;
    for (const auto& f : family)
      if (c.w == f.w || intersection_number(c, f) != 0) {
        ok = false;
        break;
      }
    if (ok) family.push_back(c);
  }
  SupportResult out;
  if (family.empty()) {
    out.sig = T->surface();
    out.fills_surface = true;
    for (int v = 0; v < T->num_vertices(); ++v) out.punctures.push_back(v);
    return out;
  }
  CutComplex cc(T, family);
  int r = cc.region_of(inside);
  const auto& R = cc.region(r);
  out.sig = R.sig;
  out.punctures = R.punctures;
  for (auto [k, mult] : R.frontier)
    for (int i = 0; i < mult; ++i) out.frontier.push_back(cc.system()[k]);
  out.fills_surface = false;
  return out;
}

}  // namespace bers
