// SPDX-License-Identifier: MIT
//
// Euclidean center functionals of the polyhedron a cap system encodes:
// vertex barycenter, wire/surface/solid mass centers, the circumcenter of
// mass built from per-face cone circumcenters, Euler-line blends, the
// barycenter of tangency points, and the two minimax centers (largest
// vertex cap, largest face cap) with their optimality certificates.

#pragma once

#include <string>
#include <vector>

#include "koebe/cap_system.hpp"

namespace koebe {

enum class CenterKind { CC, IC, CM0, CM1, CM2, CM3, CCM, Euler, Tangency,
                        WeightedCaps };

// Weight profiles for the generalized cap-centering functional on S^d,
// given as functions of a cap's angular radius.
enum class WeightFamily { Sec, Tan, PowSec };

struct CenterSpec {
  CenterKind kind = CenterKind::CM0;
  double lambda = 0.5;                      // Euler blend, in [0,1)
  WeightFamily family = WeightFamily::Sec;  // weighted-caps only
  double power = 2.0;                       // PowSec exponent

  // Accepts "cc", "ic", "cm0".."cm3", "ccm", "euler:<lambda>", "tangency",
  // "sec", "tan", "powsec:<k>". Throws parse_error otherwise.
  static CenterSpec parse(const std::string& text);
  std::string name() const;

  // CCM and Euler blends need triangle faces.
  bool needs_simplicial() const {
    return kind == CenterKind::CCM || kind == CenterKind::Euler;
  }
};

// A center value: the point itself, the normalizing constant of its defining
// weighted average, and the unnormalized summands (point = sum(terms) / A).
struct CenterValue {
  Vec point;
  double normalizer = 0.0;
  std::vector<Vec> terms;
};

// ---------------------------------------------------------------------------
// Mass centers (0- through 3-dimensional skeleta)

// Plain average of the polyhedron's vertices, written through the caps:
// (1/n) sum v_i / cos(alpha_i).
CenterValue cm0(const CapSystem& sys);

// Mass center of the edge skeleton: edges weighted by length, each
// contributing its midpoint. normalizer = 2A with A the total edge length.
CenterValue cm1(const CapSystem& sys);

// Mass center of the boundary surface via the kite decomposition;
// normalizer = 3A with A the surface area.
CenterValue cm2(const CapSystem& sys);

// Mass center of the solid via cones over the kites; normalizer = 4A with
// A = 3 * volume. Centering on this functional is experimental: the solver
// treats it as best-effort.
CenterValue cm3(const CapSystem& sys);

// ---------------------------------------------------------------------------
// Circumcentric machinery (simplicial systems)

// Volume of the tetrahedron cut off by a triangle face whose corner tangent
// lengths are t_a, t_b, t_c: (1/3) sqrt(t_a t_b t_c (t_a+t_b+t_c -
// t_a t_b t_c)). The radicand is positive exactly when the corner caps can
// close up around a face; otherwise throws geometry_error.
double simplex_volume(double t_a, double t_b, double t_c);

// Circumcenter of the cone over triangle face j: the unique point
// equidistant from the origin and the three face vertices, computed from
// the 3x3 linear system <p, v_r> = 1/(2 cos alpha_r) in the basis of the
// cap centers. Throws geometry_error on a degenerate (condition > 1e12)
// system. This linear-solve path is authoritative.
Vec cone_circumcenter(const CapSystem& sys, int face);

// An alternative closed-form evaluation of the same point, retained only
// for comparison: it disagrees with the linear solve (already on the
// symmetric case t = sqrt(2), by the factor sqrt(1 + t_a^2)/2 per
// coefficient). The comparison report in the test suite records both.
Vec cone_circumcenter_closed_form(const CapSystem& sys, int face);

// Circumcenter of mass: per-face cone circumcenters weighted by cone
// volumes. Requires a simplicial system (not_supported_error otherwise);
// normalizer = sum of the cone volumes = total volume.
CenterValue ccm(const CapSystem& sys);

// Euler-line point lambda*cm3 + (1-lambda)*ccm, lambda in [0,1).
CenterValue euler_point(const CapSystem& sys, double lambda);

// Mean of the edge tangency points (each a unit vector).
CenterValue tangency_barycenter(const CapSystem& sys);

// Dispatch on a parsed spec. For CC/IC the returned point is the vector
// from the origin to the nearest point of the convex hull of the tied
// largest caps' centers (zero exactly when the minimax certificate holds).
// WeightedCaps is rejected here; plain cap collections go through
// weighted_cap_field instead.
CenterValue evaluate_center(const CapSystem& sys, const CenterSpec& spec);

// ---------------------------------------------------------------------------
// Enclosing ball and minimax certificates

struct Ball {
  Vec center;
  double radius = 0.0;
};

// Exact smallest enclosing ball in R^3 (move-to-front Welzl; support <= 4).
Ball smallest_enclosing_ball(const std::vector<Vec>& points);

// Point of conv(points) closest to the origin, by iterative projection
// onto the affine hulls of active subsets (Wolfe's min-norm-point scheme;
// terminates finitely). Works in any dimension.
Vec min_norm_point(const std::vector<Vec>& points);

struct CenterCertificate {
  bool passes = false;      // origin within tol of the tied-cap hull
  std::vector<int> tied;    // argmax radius set (relative ties, 1e-9)
  double max_radius = 0.0;
  double hull_distance = 0.0;
  // Cross-check for the vertex-cap case: smallest enclosing ball of the
  // polyhedron's vertices, whose center should sit at the origin when the
  // largest vertex cap is as small as it can be made.
  Ball vertex_ball;
  double ball_center_norm = 0.0;
  bool ball_check = false;
};

// Optimality certificates for the minimax centers: the largest caps must be
// tied and the origin must lie in the convex hull of their centers.
CenterCertificate cc_certificate(const CapSystem& sys, double tol = 1e-7);
CenterCertificate ic_certificate(const CapSystem& sys, double tol = 1e-7);

} // namespace koebe
