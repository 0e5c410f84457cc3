#pragma once

#include <array>
#include <memory>
#include <vector>

#include "bers/surface.hpp"
#include "bers/types.hpp"

namespace bers {

// One ideal triangle.  Sides are listed in ccw order; side k runs from
// vertex-slot k to vertex-slot k+1 (mod 3), so the corner at vertex-slot v
// is flanked by sides v-1 (incoming) and v (outgoing).
struct Triangle {
  std::array<int, 3> edge;
};

struct EdgeEnd {
  int tri = -1;
  int side = -1;
  bool operator==(const EdgeEnd&) const = default;
};

// Ideal triangulation of a punctured surface without boundary.  Punctures
// are the ideal vertices; every edge is interior and carries exactly two
// triangle sides.  Immutable after construction; flips return new objects.
class IdealTriangulation {
 public:
  IdealTriangulation(SurfaceType s, std::vector<Triangle> tris);

  const SurfaceType& surface() const { return surface_; }
  int num_edges() const { return num_edges_; }
  int num_triangles() const { return static_cast<int>(tris_.size()); }
  int num_vertices() const { return static_cast<int>(links_.size()); }
  const Triangle& tri(int t) const { return tris_[t]; }
  const std::vector<Triangle>& triangles() const { return tris_; }

  // The two (triangle, side) slots carrying edge e.
  const std::array<EdgeEnd, 2>& ends(int e) const { return ends_[e]; }
  // Slot across edge e from (t, side).
  EdgeEnd across(int t, int side) const;

  // Vertex orbit of the corner at vertex-slot v of triangle t.
  int corner_vertex(int t, int v) const { return corner_vertex_[3 * t + v]; }
  // Cyclic corner sequence around each puncture (the puncture link).
  const std::vector<std::vector<std::pair<int, int>>>& links() const {
    return links_;
  }
  // Number of edge-ends incident to vertex v (with multiplicity).
  Eigen::VectorXi vertex_valences() const;

  bool flippable(int e) const;
  IdealTriangulation flipped(int e) const;

  // Identical triangle tables up to reordering of triangles and ccw rotation
  // of each triangle's slots.
  bool same_tables(const IdealTriangulation& other) const;

  // Weight vector of the link of vertex v (a peripheral curve).
  Weights peripheral_weights(int v) const;

 private:
  void index_edges();
  void compute_vertices();

  SurfaceType surface_;
  std::vector<Triangle> tris_;
  int num_edges_ = 0;
  std::vector<std::array<EdgeEnd, 2>> ends_;
  std::vector<int> corner_vertex_;
  std::vector<std::vector<std::pair<int, int>>> links_;
};

using TriPtr = std::shared_ptr<const IdealTriangulation>;

// Deterministic triangulation of S(genus, punctures); documented labeling:
// S(1,1) is the two-triangle chart, S(0,4) the tetrahedron, and every other
// supported surface is obtained by repeatedly subdividing triangle 0 with a
// new puncture.
TriPtr default_triangulation(const SurfaceType& s);

}  // namespace bers
