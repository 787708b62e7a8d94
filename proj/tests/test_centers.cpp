// SPDX-License-Identifier: MIT
#include <cmath>

#include <doctest.h>

#include "koebe/centers.hpp"
#include "koebe/errors.hpp"
#include "oracles.hpp"

using namespace koebe;

namespace {

Vec vec3(double x, double y, double z) {
  Vec v(3);
  v << x, y, z;
  return v;
}

// A mixed bag of perturbed instances for oracle sweeps.
std::vector<CapSystem> perturbed_fixtures(int per_solid, double rapidity) {
  std::vector<CapSystem> out;
  int seed = 1;
  for (const auto solid :
       {CanonicalSolid::Tetrahedron, CanonicalSolid::Cube,
        CanonicalSolid::Octahedron, CanonicalSolid::Dodecahedron,
        CanonicalSolid::Icosahedron}) {
    const CapSystem sys = make_canonical(solid);
    for (int k = 0; k < per_solid; ++k)
      out.push_back(random_valid_image(sys, seed++, rapidity).system);
  }
  return out;
}

} // namespace

TEST_CASE("mass centers match direct Euclidean integration") {
  for (const CapSystem& sys : perturbed_fixtures(5, 1.5)) {
    const Polyhedron poly = reconstruct(sys);
    CHECK((cm0(sys).point - oracle::vertex_mean(poly)).norm() < 1e-9);
    const auto [wire, length] = oracle::wire_center(poly, sys.combo);
    CHECK((cm1(sys).point - wire).norm() < 1e-9);
    const auto [surf, area] = oracle::surface_center(poly, sys.combo);
    CHECK((cm2(sys).point - surf).norm() < 1e-9);
    const auto [solid, volume] = oracle::solid_center(poly, sys.combo);
    CHECK((cm3(sys).point - solid).norm() < 1e-8);

    // normalizers: the defining weighted averages carry these constants
    CHECK(std::abs(cm1(sys).normalizer - 2.0 * length) < 1e-8 * length);
    CHECK(std::abs(cm2(sys).normalizer - 3.0 * area) < 1e-8 * area);
    CHECK(std::abs(cm3(sys).normalizer - 4.0 * (3.0 * volume)) <
          1e-7 * volume);
  }
}

TEST_CASE("normalizer identities against the reconstruction") {
  for (const CapSystem& sys : perturbed_fixtures(3, 1.8)) {
    const Polyhedron poly = reconstruct(sys);
    CHECK(std::abs(cm1(sys).normalizer / 2.0 - poly.total_edge_length) <
          1e-8 * poly.total_edge_length);
    CHECK(std::abs(cm2(sys).normalizer / 3.0 - poly.surface_area) <
          1e-8 * poly.surface_area);
    CHECK(std::abs(cm3(sys).normalizer / 4.0 - 3.0 * poly.volume) <
          1e-8 * 3.0 * poly.volume);
  }
}

TEST_CASE("canonical centers all vanish") {
  for (const auto solid :
       {CanonicalSolid::Tetrahedron, CanonicalSolid::Cube,
        CanonicalSolid::Octahedron, CanonicalSolid::Dodecahedron,
        CanonicalSolid::Icosahedron}) {
    const CapSystem sys = make_canonical(solid);
    CHECK(cm0(sys).point.norm() < 1e-12);
    CHECK(cm1(sys).point.norm() < 1e-12);
    CHECK(cm2(sys).point.norm() < 1e-12);
    CHECK(cm3(sys).point.norm() < 1e-12);
    CHECK(tangency_barycenter(sys).point.norm() < 1e-12);
    if (sys.combo.simplicial()) {
      CHECK(ccm(sys).point.norm() < 1e-10);
      CHECK(euler_point(sys, 0.5).point.norm() < 1e-10);
    }
  }
}

TEST_CASE("solid mass center fixture: tetrahedron volume and normalizer") {
  const CapSystem tet = make_canonical(CanonicalSolid::Tetrahedron);
  const CenterValue v = cm3(tet);
  CHECK(v.normalizer == doctest::Approx(32.0).epsilon(1e-12));
  CHECK(reconstruct(tet).volume == doctest::Approx(8.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("corner tetra volume: closed form vs distance-matrix determinant") {
  const double r2 = std::sqrt(2.0);
  CHECK(simplex_volume(r2, r2, r2) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK_THROWS_AS(simplex_volume(2.0, 2.0, 2.0), geometry_error);

  hyp::Rng rng(2024);
  int accepted = 0;
  double worst = 0.0;
  while (accepted < 1000) {
    const double a = rng.uniform(0.15, 3.0);
    const double b = rng.uniform(0.15, 3.0);
    const double c = rng.uniform(0.15, 3.0);
    if (a + b + c - a * b * c < 0.05) continue;
    worst = std::max(worst, std::abs(simplex_volume(a, b, c) -
                                     oracle::cayley_menger_volume(a, b, c)));
    ++accepted;
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("cone circumcenter: pinned value, equidistance, oracle agreement") {
  const CapSystem tet = make_canonical(CanonicalSolid::Tetrahedron);
  const Polyhedron poly = reconstruct(tet);

  // the face whose vertices are (1,-1,-1), (-1,1,-1), (-1,-1,1)
  int face = -1;
  for (int j = 0; j < tet.combo.n_faces(); ++j) {
    bool has_first = false;
    for (int i : tet.combo.faces[j])
      if ((poly.vertices[i] - vec3(1, 1, 1)).norm() < 1e-9) has_first = true;
    if (!has_first) face = j;
  }
  REQUIRE(face >= 0);
  const Vec p = cone_circumcenter(tet, face);
  CHECK((p - vec3(-1.5, -1.5, -1.5)).norm() < 1e-12);
  CHECK(p.norm() == doctest::Approx(1.5 * std::sqrt(3.0)).epsilon(1e-12));

  for (const CapSystem& sys : {
           random_valid_image(make_canonical(CanonicalSolid::Tetrahedron), 6, 1.5).system,
           random_valid_image(make_canonical(CanonicalSolid::Octahedron), 7, 1.5).system,
           random_valid_image(make_canonical(CanonicalSolid::Icosahedron), 8, 1.2).system,
       }) {
    const Polyhedron ph = reconstruct(sys);
    for (int j = 0; j < sys.combo.n_faces(); ++j) {
      const Vec q = cone_circumcenter(sys, j);
      std::vector<Vec> corners;
      for (int i : sys.combo.faces[j]) corners.push_back(ph.vertices[i]);
      // equidistant from the origin and every corner
      for (const Vec& v : corners)
        CHECK(std::abs((q - v).norm() - q.norm()) < 1e-9);
      // and equal to the least-squares solution from raw coordinates
      CHECK((q - oracle::equidistant_point(corners)).norm() < 1e-9);
    }
  }
}

TEST_CASE("circumcenter of mass: weights are cone volumes") {
  const CapSystem octa =
      random_valid_image(make_canonical(CanonicalSolid::Octahedron), 13, 1.4)
          .system;
  const CenterValue c = ccm(octa);
  const Polyhedron poly = reconstruct(octa);
  CHECK(std::abs(c.normalizer - poly.volume) < 1e-8 * poly.volume);
  CHECK(c.terms.size() == static_cast<std::size_t>(octa.combo.n_faces()));

  // non-simplicial systems are out of scope for circumcentric centers
  CHECK_THROWS_AS(ccm(make_canonical(CanonicalSolid::Cube)),
                  not_supported_error);
  CHECK_THROWS_AS(euler_point(make_canonical(CanonicalSolid::Dodecahedron), 0.3),
                  not_supported_error);
}

TEST_CASE("euler point is affine in lambda") {
  const CapSystem octa =
      random_valid_image(make_canonical(CanonicalSolid::Octahedron), 19, 1.3)
          .system;
  const Vec a = ccm(octa).point;        // lambda = 0
  const Vec b = cm3(octa).point;        // lambda -> 1 limit
  for (double lam : {0.0, 0.25, 0.5, 0.9}) {
    const Vec e = euler_point(octa, lam).point;
    CHECK((e - (lam * b + (1.0 - lam) * a)).norm() < 1e-10);
  }
  CHECK_THROWS_AS(euler_point(octa, 1.0), not_supported_error);
}

TEST_CASE("tangency barycenter averages unit points") {
  const CapSystem tet =
      random_valid_image(make_canonical(CanonicalSolid::Tetrahedron), 23, 1.5)
          .system;
  const CenterValue c = tangency_barycenter(tet);
  CHECK(c.terms.size() == 6);
  Vec mean = Vec::Zero(3);
  for (const Vec& t : c.terms) {
    CHECK(t.norm() == doctest::Approx(1.0).epsilon(1e-10));
    mean += t;
  }
  CHECK((c.point - mean / 6.0).norm() < 1e-12);
}

TEST_CASE("center functionals are rotation equivariant") {
  const CapSystem base =
      random_valid_image(make_canonical(CanonicalSolid::Tetrahedron), 29, 1.2)
          .system;
  hyp::Rng rng(31);
  for (int k = 0; k < 20; ++k) {
    const Mat rot = hyp::random_rotation(rng, 3);
    const CapSystem turned =
        apply_mobius(hyp::embed_rotation(rot), base);
    for (const char* name : {"cm0", "cm1", "cm2", "cm3", "ccm", "tangency",
                             "euler:0.5"}) {
      const CenterSpec spec = CenterSpec::parse(name);
      const Vec g = evaluate_center(base, spec).point;
      const Vec gr = evaluate_center(turned, spec).point;
      CHECK((gr - rot * g).norm() < 1e-10);
    }
  }
}

TEST_CASE("smallest enclosing ball: fixtures and brute-force agreement") {
  const CapSystem tet = make_canonical(CanonicalSolid::Tetrahedron);
  const Ball b = smallest_enclosing_ball(reconstruct(tet).vertices);
  CHECK(b.center.norm() < 1e-10);
  CHECK(b.radius == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));

  const Ball two = smallest_enclosing_ball({vec3(1, 0, 0), vec3(3, 0, 0)});
  CHECK((two.center - vec3(2, 0, 0)).norm() < 1e-12);
  CHECK(two.radius == doctest::Approx(1.0).epsilon(1e-12));

  hyp::Rng rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Vec> pts;
    const int n = 4 + rng.below(10);
    for (int k = 0; k < n; ++k)
      pts.push_back(rng.gaussian(3) * rng.uniform(0.5, 2.0));
    const Ball fast = smallest_enclosing_ball(pts);
    const oracle::SimpleBall slow = oracle::brute_force_ball(pts);
    CHECK(std::abs(fast.radius - slow.radius) < 1e-9);
    CHECK((fast.center - slow.center).norm() < 1e-7);
    for (const Vec& p : pts)
      CHECK((p - fast.center).norm() <= fast.radius + 1e-10);
  }
}

TEST_CASE("min_norm_point finds the closest hull point") {
  // origin inside the hull
  CHECK(min_norm_point({vec3(1, 0, 0), vec3(-1, 1, 0), vec3(-1, -1, 0),
                        vec3(0, 0, 1), vec3(0, 0, -1)})
            .norm() < 1e-9);
  // a single point
  CHECK((min_norm_point({vec3(2, 1, 0)}) - vec3(2, 1, 0)).norm() < 1e-12);
  // segment not containing the projection of the origin
  const Vec p = min_norm_point({vec3(2, 1, 0), vec3(3, 1, 0)});
  CHECK((p - vec3(2, 1, 0)).norm() < 1e-9);
  // segment crossing x = 0: foot of the perpendicular
  const Vec q = min_norm_point({vec3(-1, 1, 0), vec3(1, 1, 0)});
  CHECK((q - vec3(0, 1, 0)).norm() < 1e-9);
}

TEST_CASE("minimax certificates: canonical pass, perturbed fail") {
  const CapSystem cube = make_canonical(CanonicalSolid::Cube);
  const CenterCertificate cc = cc_certificate(cube);
  CHECK(cc.passes);
  CHECK(cc.tied.size() == 8);
  CHECK(cc.ball_check);
  const CenterCertificate ic = ic_certificate(cube);
  CHECK(ic.passes);
  CHECK(ic.tied.size() == 6);

  const CapSystem moved =
      random_valid_image(make_canonical(CanonicalSolid::Tetrahedron), 41, 1.0)
          .system;
  const CenterCertificate broken = cc_certificate(moved);
  CHECK_FALSE(broken.passes);
  CHECK(broken.ball_center_norm > 1e-3);
}

TEST_CASE("spec parsing round trips and rejects junk") {
  for (const char* name :
       {"cc", "ic", "cm0", "cm1", "cm2", "cm3", "ccm", "tangency", "sec",
        "tan"}) {
    CHECK(CenterSpec::parse(name).name() == name);
  }
  CHECK(CenterSpec::parse("euler:0.25").lambda == doctest::Approx(0.25));
  CHECK(CenterSpec::parse("powsec:3").power == doctest::Approx(3.0));
  CHECK_THROWS_AS(CenterSpec::parse("euler:1.0"), parse_error);
  CHECK_THROWS_AS(CenterSpec::parse("euler:-0.1"), parse_error);
  CHECK_THROWS_AS(CenterSpec::parse("centroid"), parse_error);
  CHECK_THROWS_AS(CenterSpec::parse(""), parse_error);
  CHECK_THROWS_AS(evaluate_center(make_canonical(CanonicalSolid::Cube),
                                  CenterSpec::parse("sec")),
                  not_supported_error);
}
