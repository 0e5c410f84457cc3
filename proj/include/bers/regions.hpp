#pragma once

#include <functional>
#include <map>

#include "bers/lamination.hpp"

namespace bers {

// Decomposition of the surface along a disjoint system of canonical curves.
// Cells are the closures of the triangle pieces cut out by the system's
// arcs; regions are the complementary subsurfaces.
class CutComplex {
 public:
  struct Region {
    SurfaceType sig;
    std::vector<int> punctures;
    // (system curve index, number of boundary circles it contributes)
    std::vector<std::pair<int, int>> frontier;
    std::vector<int> cells;
  };

  CutComplex(TriPtr T, std::vector<CurveClass> system);

  const TriPtr& tri() const { return tri_; }
  const std::vector<CurveClass>& system() const { return system_; }
  int num_regions() const { return static_cast<int>(regions_.size()); }
  const Region& region(int r) const { return regions_[r]; }
  const std::vector<Region>& regions() const { return regions_; }

  // left/right side regions of system curve k (sides of its directed trace)
  std::pair<int, int> sides_of(int k) const { return curve_sides_[k]; }

  // region containing a curve disjoint from the system and not isotopic to
  // any member
  int region_of(const CurveClass& c) const;

  // region containing puncture v
  int region_of_puncture(int v) const { return puncture_region_[v]; }

  // cell-level data used by the arc machinery
  int num_cells() const { return num_cells_; }
  int cell_region(int cell) const { return region_id_[find(cell)]; }
  int central_cell(int t) const { return central_[t]; }
  // corner cell (t, vertex-slot v, depth k); depth 0 touches the puncture
  int corner_cell(int t, int v, std::int64_t k) const;
  // cell touching edge interval i (0..w) on side (t, j)
  int interval_cell(int t, int j, std::int64_t i) const;
  // number of system strands crossing edge e
  std::int64_t strands(int e) const { return weights_[e]; }
  // which component each crossing belongs to: (edge, canonical pos) -> curve
  int crossing_owner(int e, std::int64_t pos) const;
  // union-trace component of system curve k (gates + union crossing positions)
  const TraceComponent& component(int k) const { return components_[k]; }

 private:
  int find(int x) const;
  void unite(int a, int b);

  TriPtr tri_;
  std::vector<CurveClass> system_;
  Weights weights_;  // summed system weights
  std::vector<std::array<std::int64_t, 3>> corner_counts_;
  std::vector<int> central_;
  std::vector<std::array<std::int64_t, 3>> corner_offset_;
  int num_cells_ = 0;
  mutable std::vector<int> parent_;
  std::vector<int> region_id_;  // root cell -> region index
  std::vector<Region> regions_;
  std::vector<std::pair<int, int>> curve_sides_;
  std::vector<int> puncture_region_;
  std::vector<std::map<std::int64_t, int>> owner_;  // per edge: pos -> curve
  std::vector<TraceComponent> components_;          // aligned with system_
};

// Signatures of the complement pieces of a disjoint curve system.
std::vector<SurfaceType> complement_components(
    TriPtr T, const std::vector<CurveClass>& system);

// Minimal essential subsurface with geodesic boundary containing a
// lamination, realized as the region of a maximal disjoint family of
// enumerated curves missing it.  `disjoint_from` decides i(c, lambda) = 0;
// `inside` is an integral curve carried by the lamination's support.
struct SupportResult {
  SurfaceType sig;
  std::vector<CurveClass> frontier;
  std::vector<int> punctures;
  bool fills_surface = false;
};

SupportResult minimal_support(
    TriPtr T, const CurveClass& inside,
    const std::function<bool(const CurveClass&)>& disjoint_from,
    std::int64_t enumeration_cap);

}  // namespace bers
