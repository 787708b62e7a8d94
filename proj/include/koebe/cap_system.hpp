// SPDX-License-Identifier: MIT
//
// Tangent cap systems: the combinatorics of a convex polyhedron together
// with one spherical cap per vertex and per face, such that caps of adjacent
// vertices are tangent, caps of incident vertex/face pairs are orthogonal,
// and everything else stays disjoint. Such a system is exactly the data of
// a polyhedron whose edges are tangent to the unit sphere.

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "koebe/minkowski.hpp"

namespace koebe {

using hyp::Mat;
using hyp::Vec;

// Face lists of a closed convex polyhedron. Faces are vertex index cycles,
// counter-clockwise as seen from outside. Derived structure (edges, the two
// faces along each edge, incidences) is filled in by from_faces, which
// rejects anything that is not a connected closed orientable surface with
// Euler characteristic 2.
struct Combinatorics {
  int n_vertices = 0;
  std::vector<std::vector<int>> faces;

  // Undirected edges {i, j} with i < j, sorted lexicographically.
  std::vector<std::array<int, 2>> edges;
  // Per edge {i, j}: first the face whose cycle contains i->j, then the face
  // containing j->i.
  std::vector<std::array<int, 2>> edge_faces;
  // Incident faces per vertex, in no particular order.
  std::vector<std::vector<int>> vertex_faces;
  // Incident edges per vertex.
  std::vector<std::vector<int>> vertex_edges;

  static Combinatorics from_faces(int n_vertices,
                                  std::vector<std::vector<int>> faces);

  int n_edges() const { return static_cast<int>(edges.size()); }
  int n_faces() const { return static_cast<int>(faces.size()); }

  // Index into edges for the pair {i, j}, or -1 if not an edge.
  int edge_index(int i, int j) const;
  bool adjacent(int i, int j) const { return edge_index(i, j) >= 0; }

  // True when every face is a triangle.
  bool simplicial() const;
};

// A full tangent cap system on S^2: combinatorics plus vertex and face caps.
struct CapSystem {
  Combinatorics combo;
  std::vector<hyp::SphericalCap> vertex_caps;
  std::vector<hyp::SphericalCap> face_caps;

  int sphere_dim() const { return 2; }
  int n_vertices() const { return static_cast<int>(vertex_caps.size()); }

  hyp::MinkowskiVec vertex_pole(int i) const {
    return hyp::cap_to_pole(vertex_caps[i]);
  }
  hyp::MinkowskiVec face_pole(int j) const {
    return hyp::cap_to_pole(face_caps[j]);
  }
};

// ---------------------------------------------------------------------------
// Construction

enum class CanonicalSolid { Tetrahedron, Cube, Octahedron, Dodecahedron,
                            Icosahedron };

// Parses "tetrahedron", "cube", ... (case-insensitive); throws parse_error.
CanonicalSolid parse_solid(const std::string& name);
std::string solid_name(CanonicalSolid solid);

// The five regular solids, scaled so that every edge touches the unit
// sphere. Centers of symmetry sit at the origin.
CapSystem make_canonical(CanonicalSolid solid);

// Builds a cap system from a polyhedron whose edges are tangent to the unit
// sphere: vertex cap i is the horizon of vertices[i] (center V/|V|, radius
// arccos(1/|V|)), face cap j is the circle its plane cuts out of the sphere.
// Throws geometry_error if a vertex is not outside the sphere, a face is not
// planar, or a face plane misses the sphere.
CapSystem from_midscribed(const std::vector<Vec>& vertices,
                          const Combinatorics& combo);

// Polar dual: vertex caps and face caps trade places. The dual polyhedron's
// vertices are the poles of the primal face planes, and its faces are the
// vertex stars of the primal, ordered counter-clockwise around each vertex.
CapSystem polar_dual(const CapSystem& sys);

// Transforms every cap by the same isometry. Throws geometry_error if some
// image cap reaches a hemisphere.
CapSystem apply_mobius(const hyp::LorentzMap& map, const CapSystem& sys);

// ---------------------------------------------------------------------------
// Geometry queries

// Point where two externally tangent caps touch:
// (sin(r_b) c_a + sin(r_a) c_b) / sin(r_a + r_b).
Vec tangency_point(const hyp::SphericalCap& a, const hyp::SphericalCap& b);

// Tangency point of each edge's vertex cap pair, indexed like combo.edges.
std::vector<Vec> edge_tangency_points(const CapSystem& sys);

// Smallest plane distance from p to any cap plane of the system (vertex and
// face caps alike). Positive exactly when p lies in the common exterior
// region where the center fields are defined.
double domain_margin(const CapSystem& sys, const hyp::HPoint& p);

// ---------------------------------------------------------------------------
// Validation

struct ValidationReport {
  bool ok = true;
  // Worst absolute deviation of <s_i, s_j> from -1 over edges.
  double worst_edge_tangency = 0.0;
  // Worst |<s_i, s_f>| over vertex-face incidences.
  double worst_incidence = 0.0;
  // Largest <s_i, s_j> + 1 over NON-adjacent vertex pairs; must stay <= 0
  // up to tolerance (caps disjoint or at worst tangent).
  double worst_vertex_overlap = 0.0;
  double worst_face_tangency = 0.0;
  double worst_face_overlap = 0.0;
  // Same margin for non-incident vertex/face cap pairs.
  double worst_vertex_face_overlap = 0.0;
  // Largest disagreement between the tangency point computed from the two
  // vertex caps of an edge and from its two face caps.
  double worst_tangency_mismatch = 0.0;

  std::vector<std::string> problems;
};

// Checks every defining relation of a tangent cap system within tol.
ValidationReport validate(const CapSystem& sys, double tol = 1e-9);

// ---------------------------------------------------------------------------
// Reconstruction

// The polyhedron a valid system encodes. Vertex i sits at the apex of the
// tangent cone over vertex cap i; each face's plane carries its face cap as
// the incircle of the face polygon.
struct Polyhedron {
  std::vector<Vec> vertices;        // V_i = c_i / cos(radius_i)
  std::vector<Vec> face_incenters;  // cos(radius_j) f_j
  std::vector<Vec> edge_tangency;   // indexed like combo.edges
  double total_edge_length = 0.0;
  double surface_area = 0.0;
  double volume = 0.0;
};

Polyhedron reconstruct(const CapSystem& sys);

// ---------------------------------------------------------------------------
// Controlled transformations

struct MobiusImage {
  hyp::LorentzMap map;
  CapSystem system;
};

// A random isometry image that stays representable: the inverse image of the
// chart origin is drawn uniformly in direction with rapidity uniform in
// [0, max_rapidity], rejection-sampled until it clears every cap plane, then
// composed with a uniform rotation. Deterministic in the seed.
MobiusImage random_valid_image(const CapSystem& sys, std::uint64_t seed,
                               double max_rapidity);

// Pushes one vertex cap toward a hemisphere: translates along the geodesic
// through an ideal point q inside that cap, perpendicular to the cap's
// plane, so the plane advances toward the chart origin and the cap's radius
// grows. q is chosen inside the cap to maximize angular clearance from all
// other vertex caps, which keeps the rest of the system small. Throws
// geometry_error once the rapidity pushes the chosen cap to a hemisphere.
struct InflateResult {
  hyp::LorentzMap map;
  CapSystem image;
  Vec ideal_repel;               // q, inside the chosen cap
  Vec ideal_attract;             // mirror image of q across the cap's plane
  double target_radius = 0.0;    // radius of the chosen cap afterwards
  double max_other_radius = 0.0;
  double target_plane_distance = 0.0; // chart origin to the moved plane
};

InflateResult inflate_vertex_cap(const CapSystem& sys, int vertex,
                                 double rapidity);

} // namespace koebe
