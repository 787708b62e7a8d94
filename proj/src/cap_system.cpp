// SPDX-License-Identifier: MIT

#include "koebe/cap_system.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

namespace koebe {

using hyp::HPoint;
using hyp::LorentzMap;
using hyp::MinkowskiVec;
using hyp::SphericalCap;

// --- Combinatorics ---------------------------------------------------------

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

} // namespace

Combinatorics Combinatorics::from_faces(int n_vertices,
                                        std::vector<std::vector<int>> faces) {
  if (n_vertices < 4) throw combinatorics_error("need at least 4 vertices");
  if (faces.size() < 4) throw combinatorics_error("need at least 4 faces");

  Combinatorics c;
  c.n_vertices = n_vertices;
  c.faces = std::move(faces);

  // Each directed edge must occur in exactly one face cycle; its reversal in
  // exactly one other. That pins down a closed orientable surface.
  std::map<std::pair<int, int>, int> directed; // (u,v) -> face index
  for (int f = 0; f < c.n_faces(); ++f) {
    const auto& cyc = c.faces[f];
    if (cyc.size() < 3)
      throw combinatorics_error("face with fewer than 3 vertices");
    for (size_t k = 0; k < cyc.size(); ++k) {
      const int u = cyc[k], v = cyc[(k + 1) % cyc.size()];
      if (u < 0 || u >= n_vertices || v < 0 || v >= n_vertices)
        throw combinatorics_error("face refers to a vertex out of range");
      if (u == v) throw combinatorics_error("face repeats a vertex");
      if (!directed.emplace(std::make_pair(u, v), f).second)
        throw combinatorics_error("directed edge used twice; faces are not "
                                  "consistently oriented");
    }
  }

  for (const auto& [uv, f] : directed) {
    (void)f;
    if (!directed.count({uv.second, uv.first}))
      throw combinatorics_error("boundary edge found; surface is not closed");
    if (uv.first < uv.second) c.edges.push_back({uv.first, uv.second});
  }
  std::sort(c.edges.begin(), c.edges.end());

  c.edge_faces.resize(c.edges.size());
  for (size_t e = 0; e < c.edges.size(); ++e) {
    const auto [i, j] = c.edges[e];
    c.edge_faces[e] = {directed.at({i, j}), directed.at({j, i})};
  }

  c.vertex_faces.assign(n_vertices, {});
  for (int f = 0; f < c.n_faces(); ++f)
    for (int v : c.faces[f]) c.vertex_faces[v].push_back(f);

  c.vertex_edges.assign(n_vertices, {});
  for (int e = 0; e < c.n_edges(); ++e) {
    c.vertex_edges[c.edges[e][0]].push_back(e);
    c.vertex_edges[c.edges[e][1]].push_back(e);
  }

  for (int v = 0; v < n_vertices; ++v)
    if (c.vertex_edges[v].size() < 3)
      throw combinatorics_error("vertex with degree < 3");

  if (n_vertices - c.n_edges() + c.n_faces() != 2)
    throw combinatorics_error("Euler characteristic is not 2");

  UnionFind uf(n_vertices);
  for (const auto& e : c.edges) uf.unite(e[0], e[1]);
  for (int v = 1; v < n_vertices; ++v)
    if (uf.find(v) != uf.find(0))
      throw combinatorics_error("vertex graph is disconnected");

  return c;
}

int Combinatorics::edge_index(int i, int j) const {
  if (i == j) return -1;
  const std::array<int, 2> key{std::min(i, j), std::max(i, j)};
  const auto it = std::lower_bound(edges.begin(), edges.end(), key);
  if (it == edges.end() || *it != key) return -1;
  return static_cast<int>(it - edges.begin());
}

bool Combinatorics::simplicial() const {
  return std::all_of(faces.begin(), faces.end(),
                     [](const auto& f) { return f.size() == 3; });
}

// --- geometry queries --------------------------------------------------------

Vec tangency_point(const SphericalCap& a, const SphericalCap& b) {
  const double s = std::sin(a.radius + b.radius);
  Vec t = (std::sin(b.radius) * a.center + std::sin(a.radius) * b.center) / s;
  return t / t.norm();
}

std::vector<Vec> edge_tangency_points(const CapSystem& sys) {
  std::vector<Vec> out;
  out.reserve(sys.combo.edges.size());
  for (const auto& e : sys.combo.edges)
    out.push_back(tangency_point(sys.vertex_caps[e[0]], sys.vertex_caps[e[1]]));
  return out;
}

double domain_margin(const CapSystem& sys, const HPoint& p) {
  double margin = std::numeric_limits<double>::infinity();
  for (const auto& cap : sys.vertex_caps)
    margin = std::min(margin, hyp::plane_distance(p, hyp::cap_to_pole(cap)));
  for (const auto& cap : sys.face_caps)
    margin = std::min(margin, hyp::plane_distance(p, hyp::cap_to_pole(cap)));
  return margin;
}

// --- validation --------------------------------------------------------------

namespace {

void complain(ValidationReport& rep, const std::string& msg) {
  rep.ok = false;
  rep.problems.push_back(msg);
}

std::string pair_str(const char* what, int a, int b, double value) {
  std::ostringstream os;
  os << what << " (" << a << ", " << b << "): " << value;
  return os.str();
}

} // namespace

ValidationReport validate(const CapSystem& sys, double tol) {
  ValidationReport rep;
  const auto& combo = sys.combo;
  const int n = combo.n_vertices;

  if (static_cast<int>(sys.vertex_caps.size()) != n ||
      static_cast<int>(sys.face_caps.size()) != combo.n_faces()) {
    complain(rep, "cap counts do not match the combinatorics");
    return rep;
  }

  auto radius_ok = [&](const SphericalCap& cap) {
    return cap.radius > 0.0 && cap.radius < M_PI / 2.0 &&
           std::abs(cap.center.norm() - 1.0) <= 1e-9;
  };
  for (int i = 0; i < n; ++i)
    if (!radius_ok(sys.vertex_caps[i]))
      complain(rep, pair_str("bad vertex cap", i, i, sys.vertex_caps[i].radius));
  for (int j = 0; j < combo.n_faces(); ++j)
    if (!radius_ok(sys.face_caps[j]))
      complain(rep, pair_str("bad face cap", j, j, sys.face_caps[j].radius));
  if (!rep.ok) return rep;

  std::vector<MinkowskiVec> sv, sf;
  for (const auto& cap : sys.vertex_caps) sv.push_back(hyp::cap_to_pole(cap));
  for (const auto& cap : sys.face_caps) sf.push_back(hyp::cap_to_pole(cap));

  rep.worst_vertex_overlap = -std::numeric_limits<double>::infinity();
  rep.worst_face_overlap = -std::numeric_limits<double>::infinity();
  rep.worst_vertex_face_overlap = -std::numeric_limits<double>::infinity();

  // Vertex pairs: tangent along edges, disjoint otherwise.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double p = hyp::mdot(sv[i], sv[j]);
      if (combo.adjacent(i, j)) {
        rep.worst_edge_tangency =
            std::max(rep.worst_edge_tangency, std::abs(p + 1.0));
        if (std::abs(p + 1.0) > tol)
          complain(rep, pair_str("edge caps not tangent", i, j, p));
      } else {
        rep.worst_vertex_overlap = std::max(rep.worst_vertex_overlap, p + 1.0);
        if (p + 1.0 > tol)
          complain(rep, pair_str("non-adjacent vertex caps overlap", i, j, p));
      }
    }

  // Vertex/face pairs: orthogonal when incident, disjoint otherwise.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < combo.n_faces(); ++j) {
      const bool incident =
          std::find(combo.faces[j].begin(), combo.faces[j].end(), i) !=
          combo.faces[j].end();
      const double p = hyp::mdot(sv[i], sf[j]);
      if (incident) {
        rep.worst_incidence = std::max(rep.worst_incidence, std::abs(p));
        if (std::abs(p) > tol)
          complain(rep, pair_str("incident caps not orthogonal", i, j, p));
      } else {
        rep.worst_vertex_face_overlap =
            std::max(rep.worst_vertex_face_overlap, p + 1.0);
        if (p + 1.0 > tol)
          complain(rep, pair_str("vertex cap meets a far face cap", i, j, p));
      }
    }

  // Face pairs: tangent across each edge, disjoint otherwise.
  std::vector<std::vector<char>> face_adj(
      combo.n_faces(), std::vector<char>(combo.n_faces(), 0));
  for (const auto& ef : combo.edge_faces)
    face_adj[ef[0]][ef[1]] = face_adj[ef[1]][ef[0]] = 1;
  for (int a = 0; a < combo.n_faces(); ++a)
    for (int b = a + 1; b < combo.n_faces(); ++b) {
      const double p = hyp::mdot(sf[a], sf[b]);
      if (face_adj[a][b]) {
        rep.worst_face_tangency =
            std::max(rep.worst_face_tangency, std::abs(p + 1.0));
        if (std::abs(p + 1.0) > tol)
          complain(rep, pair_str("face caps across an edge not tangent", a, b, p));
      } else {
        rep.worst_face_overlap = std::max(rep.worst_face_overlap, p + 1.0);
        if (p + 1.0 > tol)
          complain(rep, pair_str("non-adjacent face caps overlap", a, b, p));
      }
    }

  // The two vertex caps of an edge and the two face caps across it must all
  // touch at one point.
  for (int e = 0; e < combo.n_edges(); ++e) {
    const auto [i, j] = combo.edges[e];
    const auto [a, b] = combo.edge_faces[e];
    const Vec t_v = tangency_point(sys.vertex_caps[i], sys.vertex_caps[j]);
    const Vec t_f = tangency_point(sys.face_caps[a], sys.face_caps[b]);
    const double mismatch = (t_v - t_f).norm();
    rep.worst_tangency_mismatch =
        std::max(rep.worst_tangency_mismatch, mismatch);
    if (mismatch > tol)
      complain(rep, pair_str("edge tangency points disagree", i, j, mismatch));
  }

  return rep;
}

// --- reconstruction ----------------------------------------------------------

Polyhedron reconstruct(const CapSystem& sys) {
  Polyhedron poly;
  for (const auto& cap : sys.vertex_caps)
    poly.vertices.push_back(cap.center / std::cos(cap.radius));
  for (const auto& cap : sys.face_caps)
    poly.face_incenters.push_back(cap.center * std::cos(cap.radius));
  poly.edge_tangency = edge_tangency_points(sys);

  // Tangent length from vertex i to the sphere; each edge consists of the
  // two tangent segments meeting at its tangency point.
  auto tan_len = [&](int i) { return std::tan(sys.vertex_caps[i].radius); };

  for (const auto& e : sys.combo.edges)
    poly.total_edge_length += tan_len(e[0]) + tan_len(e[1]);

  // Each face splits into kites (vertex, tangency, incenter, tangency) of
  // area tan(alpha_i) * sin(beta_j); the volume adds the cone height
  // cos(beta_j) over each kite.
  for (int j = 0; j < sys.combo.n_faces(); ++j) {
    const double sb = std::sin(sys.face_caps[j].radius);
    const double cb = std::cos(sys.face_caps[j].radius);
    for (int i : sys.combo.faces[j]) {
      const double kite = tan_len(i) * sb;
      poly.surface_area += kite;
      poly.volume += kite * cb / 3.0;
    }
  }
  return poly;
}

// --- transformations -----------------------------------------------------

CapSystem apply_mobius(const LorentzMap& map, const CapSystem& sys) {
  CapSystem out;
  out.combo = sys.combo;
  out.vertex_caps.reserve(sys.vertex_caps.size());
  out.face_caps.reserve(sys.face_caps.size());
  for (const auto& cap : sys.vertex_caps)
    out.vertex_caps.push_back(hyp::apply_cap(map, cap));
  for (const auto& cap : sys.face_caps)
    out.face_caps.push_back(hyp::apply_cap(map, cap));
  return out;
}

MobiusImage random_valid_image(const CapSystem& sys, std::uint64_t seed,
                               double max_rapidity) {
  hyp::Rng rng(seed);
  const Mat rot = hyp::random_rotation(rng, 3);
  const HPoint o = HPoint::origin(sys.sphere_dim());

  // Draw the inverse image x of the chart origin: uniform direction, rapidity
  // uniform in [0, max_rapidity], rejected until x clears every cap plane.
  // The exterior region reaches ideal points outside the caps, so a valid x
  // exists at every rapidity; the margin keeps the image numerically sound.
  for (int attempt = 0; attempt < 4096; ++attempt) {
    const Vec u = rng.unit_vector(3);
    const double chi = rng.uniform(0.0, max_rapidity);
    if (chi < 1e-12) {
      LorentzMap map = hyp::embed_rotation(rot);
      return MobiusImage{map, apply_mobius(map, sys)};
    }
    const HPoint x =
        hyp::geodesic_exp(hyp::TangentVec::checked(o, {u, 0.0}), chi);
    if (domain_margin(sys, x) < 1e-2) continue;
    LorentzMap map = hyp::embed_rotation(rot).compose(hyp::boost_to_origin(x));
    return MobiusImage{map, apply_mobius(map, sys)};
  }
  throw geometry_error("no valid random image found at this rapidity");
}

namespace {

// Largest angular clearance from the other vertex caps, restricted to the
// closed cap `vertex`. Coarse grid plus a shrinking local search; the
// clearance function is concave enough on these instances for that to land
// within ~1e-6, far more than the construction needs.
Vec clearance_point(const CapSystem& sys, int vertex) {
  const SphericalCap& cap = sys.vertex_caps[vertex];

  Vec axis = cap.center;
  Vec e1(3);
  e1 << 1, 0, 0;
  if (std::abs(axis(0)) > 0.9) e1 << 0, 1, 0;
  e1 = (e1 - e1.dot(axis) * axis).normalized();
  Vec e2(3);
  e2 << axis(1) * e1(2) - axis(2) * e1(1), axis(2) * e1(0) - axis(0) * e1(2),
      axis(0) * e1(1) - axis(1) * e1(0);

  auto point = [&](double theta, double psi) -> Vec {
    return std::cos(theta) * axis +
           std::sin(theta) * (std::cos(psi) * e1 + std::sin(psi) * e2);
  };
  auto clearance = [&](const Vec& q) {
    double c = std::numeric_limits<double>::infinity();
    for (int k = 0; k < sys.n_vertices(); ++k) {
      if (k == vertex) continue;
      const double ang =
          std::acos(std::clamp(q.dot(sys.vertex_caps[k].center), -1.0, 1.0));
      c = std::min(c, ang - sys.vertex_caps[k].radius);
    }
    return c;
  };

  double best_t = 0.0, best_p = 0.0;
  double best = clearance(point(0.0, 0.0));
  for (int it = 0; it < 24; ++it)
    for (int ip = 0; ip < 48; ++ip) {
      const double t = cap.radius * (it + 1) / 25.0;
      const double p = 2.0 * M_PI * ip / 48.0;
      const double c = clearance(point(t, p));
      if (c > best) best = c, best_t = t, best_p = p;
    }
  for (double step = cap.radius / 25.0; step > 1e-7; step *= 0.5) {
    bool moved = false;
    for (const auto& [dt, dp] : std::initializer_list<std::pair<double, double>>{
             {step, 0.0}, {-step, 0.0}, {0.0, step}, {0.0, -step}}) {
      const double t = std::clamp(best_t + dt, 0.0, cap.radius);
      const double p = best_p + dp;
      const double c = clearance(point(t, p));
      if (c > best) best = c, best_t = t, best_p = p, moved = true;
    }
    if (moved) step *= 2.0;
  }
  return point(best_t, best_p);
}

} // namespace

InflateResult inflate_vertex_cap(const CapSystem& sys, int vertex,
                                 double rapidity) {
  if (vertex < 0 || vertex >= sys.n_vertices())
    throw combinatorics_error("vertex index out of range");

  const Vec q = clearance_point(sys, vertex);

  // Mirror the ideal point across the cap's plane; the geodesic between the
  // two is the unique one through q perpendicular to that plane.
  const MinkowskiVec s = sys.vertex_pole(vertex);
  const MinkowskiVec lq{q, 1.0};
  const MinkowskiVec lm = lq - 2.0 * hyp::mdot(s, lq) * s;
  if (lm.time <= 0.0)
    throw geometry_error("mirrored ideal point is not on the future cone");
  const Vec attract = lm.spatial / lm.time;

  LorentzMap map = hyp::translation_along(attract, q, rapidity);
  CapSystem image = apply_mobius(map, sys); // throws at a hemisphere

  InflateResult res{std::move(map), std::move(image), q, attract, 0.0, 0.0, 0.0};
  res.target_radius = res.image.vertex_caps[vertex].radius;
  for (int k = 0; k < res.image.n_vertices(); ++k)
    if (k != vertex)
      res.max_other_radius =
          std::max(res.max_other_radius, res.image.vertex_caps[k].radius);
  res.target_plane_distance =
      hyp::plane_distance(HPoint::origin(2), res.image.vertex_pole(vertex));
  return res;
}

} // namespace koebe
