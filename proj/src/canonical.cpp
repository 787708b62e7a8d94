// SPDX-License-Identifier: MIT
//
// The five regular solids scaled to touch the unit sphere with their edges,
// the generic midscribed-polyhedron constructor they share, and polar
// duality.

#include <algorithm>
#include <cctype>
#include <cmath>

#include "koebe/cap_system.hpp"

namespace koebe {

using hyp::SphericalCap;

namespace {

Vec v3(double x, double y, double z) {
  Vec v(3);
  v << x, y, z;
  return v;
}

Vec cross3(const Vec& a, const Vec& b) {
  return v3(a(1) * b(2) - a(2) * b(1), a(2) * b(0) - a(0) * b(2),
            a(0) * b(1) - a(1) * b(0));
}

// Orders vertex indices counter-clockwise around the outward axis, as seen
// from outside the sphere.
std::vector<int> order_ccw(std::vector<int> idx, const std::vector<Vec>& pts,
                           const Vec& axis) {
  Vec e1 = v3(1, 0, 0);
  if (std::abs(axis(0)) > 0.9) e1 = v3(0, 1, 0);
  e1 = (e1 - e1.dot(axis) * axis).normalized();
  const Vec e2 = cross3(axis, e1);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    return std::atan2(pts[a].dot(e2), pts[a].dot(e1)) <
           std::atan2(pts[b].dot(e2), pts[b].dot(e1));
  });
  return idx;
}

Vec face_centroid(const std::vector<int>& face, const std::vector<Vec>& pts) {
  Vec c = Vec::Zero(3);
  for (int i : face) c += pts[i];
  return c / static_cast<double>(face.size());
}

} // namespace

CapSystem from_midscribed(const std::vector<Vec>& vertices,
                          const Combinatorics& combo) {
  if (static_cast<int>(vertices.size()) != combo.n_vertices)
    throw geometry_error("vertex count does not match the combinatorics");

  CapSystem sys;
  sys.combo = combo;

  for (const Vec& v : vertices) {
    const double r = v.norm();
    if (r <= 1.0 + 1e-12)
      throw geometry_error("polyhedron vertex is not outside the sphere");
    // Horizon circle of the point: the tangent cone touches the sphere
    // along a cap of angular radius arccos(1/|V|).
    sys.vertex_caps.push_back(SphericalCap::checked(v / r, std::acos(1.0 / r)));
  }

  for (const auto& face : combo.faces) {
    // Newell's normal; outward because faces run counter-clockwise.
    Vec n = Vec::Zero(3);
    for (size_t k = 0; k < face.size(); ++k)
      n += cross3(vertices[face[k]], vertices[face[(k + 1) % face.size()]]);
    const double nn = n.norm();
    if (nn < 1e-12) throw geometry_error("degenerate face");
    n /= nn;

    double h = 0.0;
    for (int i : face) h += vertices[i].dot(n);
    h /= static_cast<double>(face.size());
    for (int i : face)
      if (std::abs(vertices[i].dot(n) - h) > 1e-8)
        throw geometry_error("face is not planar");
    if (h <= 0.0 || h >= 1.0)
      throw geometry_error("face plane does not cut the sphere");

    sys.face_caps.push_back(SphericalCap::checked(n, std::acos(h)));
  }
  return sys;
}

CapSystem polar_dual(const CapSystem& sys) {
  // Dual vertices are the poles of the primal face planes.
  std::vector<Vec> dual_verts;
  for (const auto& cap : sys.face_caps)
    dual_verts.push_back(cap.center / std::cos(cap.radius));

  // One dual face per primal vertex: its incident faces, ordered
  // counter-clockwise around the vertex cap's center.
  std::vector<std::vector<int>> dual_faces;
  for (int i = 0; i < sys.n_vertices(); ++i)
    dual_faces.push_back(order_ccw(sys.combo.vertex_faces[i], dual_verts,
                                   sys.vertex_caps[i].center));

  const auto combo = Combinatorics::from_faces(
      static_cast<int>(dual_verts.size()), std::move(dual_faces));
  return from_midscribed(dual_verts, combo);
}

// --- the five solids -------------------------------------------------------

namespace {

CapSystem make_tetrahedron() {
  // Integer coordinates already have all edge midpoints on the unit sphere.
  const std::vector<Vec> verts{v3(1, 1, 1), v3(1, -1, -1), v3(-1, 1, -1),
                               v3(-1, -1, 1)};
  const auto combo = Combinatorics::from_faces(
      4, {{0, 1, 2}, {0, 3, 1}, {0, 2, 3}, {1, 3, 2}});
  return from_midscribed(verts, combo);
}

CapSystem make_cube() {
  std::vector<Vec> verts;
  for (int b = 0; b < 8; ++b)
    verts.push_back(v3(b & 1 ? 1 : -1, b & 2 ? 1 : -1, b & 4 ? 1 : -1) /
                    std::sqrt(2.0));
  std::vector<std::vector<int>> faces;
  for (int axis = 0; axis < 3; ++axis)
    for (int sign : {-1, 1}) {
      std::vector<int> f;
      for (int b = 0; b < 8; ++b)
        if (((b >> axis) & 1 ? 1 : -1) == sign) f.push_back(b);
      Vec n = Vec::Zero(3);
      n(axis) = sign;
      faces.push_back(order_ccw(f, verts, n));
    }
  return from_midscribed(verts, Combinatorics::from_faces(8, std::move(faces)));
}

CapSystem make_octahedron() {
  std::vector<Vec> verts;
  for (int axis = 0; axis < 3; ++axis)
    for (int sign : {1, -1}) {
      Vec v = Vec::Zero(3);
      v(axis) = sign * std::sqrt(2.0);
      verts.push_back(v);
    }
  std::vector<std::vector<int>> faces;
  for (int sx : {1, -1})
    for (int sy : {1, -1})
      for (int sz : {1, -1}) {
        const std::vector<int> f{sx > 0 ? 0 : 1, sy > 0 ? 2 : 3,
                                 sz > 0 ? 4 : 5};
        faces.push_back(order_ccw(f, verts, v3(sx, sy, sz).normalized()));
      }
  return from_midscribed(verts, Combinatorics::from_faces(6, std::move(faces)));
}

CapSystem make_icosahedron() {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  // (0, +-1, +-phi) and cyclic shifts, scaled by 1/phi: edge midpoints land
  // exactly on the unit sphere (a golden-ratio identity).
  std::vector<Vec> verts;
  for (int shift = 0; shift < 3; ++shift)
    for (int s1 : {1, -1})
      for (int s2 : {1, -1}) {
        Vec v(3);
        v((shift + 0) % 3) = 0.0;
        v((shift + 1) % 3) = s1 / phi;
        v((shift + 2) % 3) = s2;
        verts.push_back(v);
      }

  double min_d = std::numeric_limits<double>::infinity();
  for (size_t a = 0; a < verts.size(); ++a)
    for (size_t b = a + 1; b < verts.size(); ++b)
      min_d = std::min(min_d, (verts[a] - verts[b]).norm());

  std::vector<std::vector<int>> faces;
  for (size_t a = 0; a < verts.size(); ++a)
    for (size_t b = a + 1; b < verts.size(); ++b)
      for (size_t c = b + 1; c < verts.size(); ++c) {
        const double ab = (verts[a] - verts[b]).norm();
        const double bc = (verts[b] - verts[c]).norm();
        const double ca = (verts[c] - verts[a]).norm();
        if (std::max({ab, bc, ca}) < min_d * 1.0001) {
          std::vector<int> f{static_cast<int>(a), static_cast<int>(b),
                             static_cast<int>(c)};
          const Vec axis =
              face_centroid(f, verts).normalized();
          faces.push_back(order_ccw(f, verts, axis));
        }
      }
  return from_midscribed(verts,
                         Combinatorics::from_faces(12, std::move(faces)));
}

} // namespace

CapSystem make_canonical(CanonicalSolid solid) {
  switch (solid) {
    case CanonicalSolid::Tetrahedron: return make_tetrahedron();
    case CanonicalSolid::Cube: return make_cube();
    case CanonicalSolid::Octahedron: return make_octahedron();
    case CanonicalSolid::Icosahedron: return make_icosahedron();
    case CanonicalSolid::Dodecahedron:
      return polar_dual(make_icosahedron());
  }
  throw parse_error("unknown solid");
}

std::string solid_name(CanonicalSolid solid) {
  switch (solid) {
    case CanonicalSolid::Tetrahedron: return "tetrahedron";
    case CanonicalSolid::Cube: return "cube";
    case CanonicalSolid::Octahedron: return "octahedron";
    case CanonicalSolid::Dodecahedron: return "dodecahedron";
    case CanonicalSolid::Icosahedron: return "icosahedron";
  }
  return "?";
}

CanonicalSolid parse_solid(const std::string& name) {
  std::string low;
  for (char ch : name)
    low.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  for (CanonicalSolid s :
       {CanonicalSolid::Tetrahedron, CanonicalSolid::Cube,
        CanonicalSolid::Octahedron, CanonicalSolid::Dodecahedron,
        CanonicalSolid::Icosahedron})
    if (low == solid_name(s)) return s;
  throw parse_error("unknown solid name: " + name);
}

} // namespace koebe
