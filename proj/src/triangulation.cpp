#include "bers/triangulation.hpp"

#include <algorithm>
#include <map>

namespace bers {

IdealTriangulation::IdealTriangulation(SurfaceType s, std::vector<Triangle> tris)
    : surface_(s), tris_(std::move(tris)) {
  index_edges();
  compute_vertices();
  require(num_vertices() == surface_.punctures, errc::bad_input,
          "triangulation has " + std::to_string(num_vertices()) +
              " vertices, surface wants " + std::to_string(surface_.punctures));
  int expect_edges = 6 * surface_.genus - 6 + 3 * surface_.punctures;
  require(num_edges_ == expect_edges, errc::bad_input,
          "edge count " + std::to_string(num_edges_) + " != 6g-6+3p = " +
              std::to_string(expect_edges));
}

void IdealTriangulation::index_edges() {
  num_edges_ = 0;
  for (const Triangle& t : tris_)
    for (int e : t.edge) num_edges_ = std::max(num_edges_, e + 1);
  ends_.assign(num_edges_, {EdgeEnd{}, EdgeEnd{}});
  std::vector<int> count(num_edges_, 0);
  for (int t = 0; t < num_triangles(); ++t)
    for (int k = 0; k < 3; ++k) {
      int e = tris_[t].edge[k];
      require(count[e] < 2, errc::bad_input,
              "edge " + std::to_string(e) + " carried by more than two sides");
      ends_[e][count[e]++] = EdgeEnd{t, k};
    }
  for (int e = 0; e < num_edges_; ++e)
    require(count[e] == 2, errc::bad_input,
            "edge " + std::to_string(e) + " must bound exactly two sides");
}

EdgeEnd IdealTriangulation::across(int t, int side) const {
  const auto& both = ends_[tris_[t].edge[side]];
  if (both[0].tri == t && both[0].side == side) return both[1];
  return both[0];
}

void IdealTriangulation::compute_vertices() {
  // Crossing side v from the corner at vertex-slot v lands at the corner at
  // vertex-slot side'+1 of the neighbor: gluings reverse edge orientations.
  int n = 3 * num_triangles();
  corner_vertex_.assign(n, -1);
  links_.clear();
  for (int c0 = 0; c0 < n; ++c0) {
    if (corner_vertex_[c0] >= 0) continue;
    int id = static_cast<int>(links_.size());
    links_.emplace_back();
    int t = c0 / 3, v = c0 % 3;
    while (corner_vertex_[3 * t + v] < 0) {
      corner_vertex_[3 * t + v] = id;
      links_.back().push_back({t, v});
      EdgeEnd n2 = across(t, v);
      t = n2.tri;
      v = (n2.side + 1) % 3;
    }
  }
}

Eigen::VectorXi IdealTriangulation::vertex_valences() const {
  // edge-ends and corners alternate around a puncture, so they are in
  // bijection
  Eigen::VectorXi val(num_vertices());
  for (int v = 0; v < num_vertices(); ++v)
    val[v] = static_cast<int>(links_[v].size());
  return val;
}

bool IdealTriangulation::flippable(int e) const {
  const auto& en = ends_[e];
  if (en[0].tri == en[1].tri) return false;  // self-glued
  // reject flips that would create a self-folded triangle
  int t = en[0].tri, k = en[0].side;
  int tp = en[1].tri, kp = en[1].side;
  int q = tris_[t].edge[(k + 2) % 3], r = tris_[tp].edge[(kp + 1) % 3];
  int s = tris_[tp].edge[(kp + 2) % 3], p = tris_[t].edge[(k + 1) % 3];
  if (q == r || s == p) return false;
  return true;
}

IdealTriangulation IdealTriangulation::flipped(int e) const {
  require(flippable(e), errc::invalid_flip,
          "edge " + std::to_string(e) + " is not flippable");
  const auto& en = ends_[e];
  int t = en[0].tri, k = en[0].side;
  int tp = en[1].tri, kp = en[1].side;
  int p = tris_[t].edge[(k + 1) % 3], q = tris_[t].edge[(k + 2) % 3];
  int r = tris_[tp].edge[(kp + 1) % 3], s = tris_[tp].edge[(kp + 2) % 3];
  std::vector<Triangle> out = tris_;
  out[t] = Triangle{{q, r, e}};
  out[tp] = Triangle{{s, p, e}};
  return IdealTriangulation(surface_, std::move(out));
}

bool IdealTriangulation::same_tables(const IdealTriangulation& other) const {
  if (other.num_triangles() != num_triangles()) return false;
  auto key = [](const Triangle& t) {
    std::array<int, 3> best = t.edge;
    for (int r = 1; r < 3; ++r) {
      std::array<int, 3> rot = {t.edge[r % 3], t.edge[(r + 1) % 3],
                                t.edge[(r + 2) % 3]};
      best = std::min(best, rot);
    }
    return best;
  };
  std::vector<std::array<int, 3>> a, b;
  for (const Triangle& t : tris_) a.push_back(key(t));
  for (const Triangle& t : other.tris_) b.push_back(key(t));
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

Weights IdealTriangulation::peripheral_weights(int v) const {
  Weights w = Weights::Zero(num_edges_);
  // the link crosses the two sides flanking each corner at v; summing over
  // corners counts every crossing twice
  for (auto [t, c] : links_[v]) {
    w[tris_[t].edge[c]] += 1;
    w[tris_[t].edge[(c + 2) % 3]] += 1;
  }
  for (int e = 0; e < num_edges_; ++e) {
    require(w[e] % 2 == 0, errc::bad_input, "bad link parity");
    w[e] /= 2;
  }
  return w;
}

namespace {

// Build a triangulation from vertex triples (ccw as seen from outside is not
// meaningful abstractly; consistency is validated by the constructor).
std::vector<Triangle> faces_to_triangles(
    const std::vector<std::array<int, 3>>& faces) {
  std::map<std::pair<int, int>, int> edge_of;
  std::vector<Triangle> tris;
  for (const auto& f : faces) {
    Triangle t{};
    for (int k = 0; k < 3; ++k) {
      int a = f[k], b = f[(k + 1) % 3];
      auto key = std::minmax(a, b);
      auto it = edge_of.find({key.first, key.second});
      int e;
      if (it == edge_of.end()) {
        e = static_cast<int>(edge_of.size());
        edge_of[{key.first, key.second}] = e;
      } else {
        e = it->second;
      }
      t.edge[k] = e;
    }
    tris.push_back(t);
  }
  return tris;
}

// Replace triangle `which` by the cone over a new interior puncture.
std::vector<Triangle> subdivide(const std::vector<Triangle>& tris, int which,
                                int num_edges) {
  std::vector<Triangle> out = tris;
  const Triangle t = tris[which];
  int e0 = num_edges, e1 = num_edges + 1, e2 = num_edges + 2;
  // sides (a,b,c) become triangles (a, e1, e0), (b, e2, e1), (c, e0, e2):
  // side k keeps its ccw orientation, the two cone edges close each corner.
  out[which] = Triangle{{t.edge[0], e1, e0}};
  out.push_back(Triangle{{t.edge[1], e2, e1}});
  out.push_back(Triangle{{t.edge[2], e0, e2}});
  return out;
}

}  // namespace

TriPtr default_triangulation(const SurfaceType& s) {
  require(s.boundary_curves == 0 && s.punctures >= 1, errc::bad_input,
          "default triangulations exist for punctured surfaces only");
  std::vector<Triangle> tris;
  int base_punctures;
  if (s.genus == 0) {
    require(s.punctures >= 4, errc::complexity_too_low,
            "genus 0 needs at least 4 punctures");
    // boundary of the tetrahedron, all faces oriented consistently
    tris = faces_to_triangles(
        {{0, 1, 2}, {0, 2, 3}, {0, 3, 1}, {1, 3, 2}});
    base_punctures = 4;
  } else if (s.genus == 1) {
    // the standard two-triangle chart of the once-punctured torus
    tris = {Triangle{{0, 1, 2}}, Triangle{{0, 1, 2}}};
    base_punctures = 1;
  } else {
    fail(errc::bad_input, "genus >= 2 default charts are not provided");
  }
  int edges = 0;
  for (const Triangle& t : tris)
    for (int e : t.edge) edges = std::max(edges, e + 1);
  for (int p = base_punctures; p < s.punctures; ++p) {
    tris = subdivide(tris, 0, edges);
    edges += 3;
  }
  return std::make_shared<IdealTriangulation>(
      SurfaceType{s.genus, s.punctures, 0}, std::move(tris));
}

}  // namespace bers
