// SPDX-License-Identifier: MIT
//
// Hyperboloid-model primitives: Minkowski vectors, points of hyperbolic
// space, spherical caps and their space-like poles, orientation-preserving
// isometries (Lorentz maps), and the chart/transport operations everything
// else is built from.
//
// Conventions used throughout:
//   * The bilinear form is <x,y> = x_spatial . y_spatial - x_time * y_time.
//   * A point of hyperbolic space satisfies <p,p> = -1 with time > 0.
//   * A cap with unit center c and radius rho in (0, pi/2) has pole
//     s = (c, cos rho) / sin rho, a space-like unit vector. The hyperbolic
//     plane of the cap is s-perp intersected with the hyperboloid.
//   * plane_distance(p, s) = arsinh(-<p,s>) is positive when p lies on the
//     side of the plane away from the cap (the common exterior region where
//     the whole construction lives), negative on the cap side.

#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <vector>

#include "koebe/errors.hpp"

namespace koebe::hyp {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Absolute tolerance used when validating normalization invariants
// (<p,p> = -1, <s,s> = 1, M^T J M = J).
inline constexpr double kFormTol = 1e-10;

// ---------------------------------------------------------------------------
// Types

// A vector of Minkowski space R^{d+1,1}: spatial part in R^{d+1} plus a time
// coordinate. d is the dimension of the sphere at infinity (d = 2 for the
// polyhedral setting).
struct MinkowskiVec {
  Vec spatial;
  double time = 0.0;

  MinkowskiVec() = default;
  MinkowskiVec(Vec sp, double t) : spatial(std::move(sp)), time(t) {}

  int sphere_dim() const { return static_cast<int>(spatial.size()) - 1; }

  MinkowskiVec operator+(const MinkowskiVec& o) const {
    return {spatial + o.spatial, time + o.time};
  }
  MinkowskiVec operator-(const MinkowskiVec& o) const {
    return {spatial - o.spatial, time - o.time};
  }
  MinkowskiVec operator*(double a) const { return {spatial * a, time * a}; }
  MinkowskiVec& operator+=(const MinkowskiVec& o) {
    spatial += o.spatial;
    time += o.time;
    return *this;
  }
};

inline MinkowskiVec operator*(double a, const MinkowskiVec& v) { return v * a; }

// <x,y> = x_sp . y_sp - x_t y_t
double mdot(const MinkowskiVec& x, const MinkowskiVec& y);

// A point of hyperbolic space H^{d+1}: <p,p> = -1 (within kFormTol), time > 0.
// Construct through checked() (validates) or normalized() (rescales a
// time-like vector onto the sheet, the usual way to absorb rounding).
struct HPoint {
  MinkowskiVec v;

  static HPoint checked(MinkowskiVec v);
  static HPoint normalized(MinkowskiVec v);
  static HPoint origin(int sphere_dim);

  int sphere_dim() const { return v.sphere_dim(); }

private:
  explicit HPoint(MinkowskiVec w) : v(std::move(w)) {}
};

// A tangent vector at a base point: <vec, base> = 0 (within kFormTol).
// Tangent vectors are space-like, so <vec,vec> >= 0 and sqrt gives a norm.
struct TangentVec {
  HPoint base;
  MinkowskiVec vec;

  static TangentVec checked(HPoint base, MinkowskiVec vec);
  // Projects vec onto the tangent space at base, then wraps it.
  static TangentVec projected(const HPoint& base, const MinkowskiVec& vec);

  double norm() const;
  TangentVec normalized() const; // throws geometry_error on near-zero vectors
};

// An isometry of the hyperboloid: (d+2)x(d+2) matrix M with M^T J M = J
// (J = diag(1,...,1,-1)) and M(d+1,d+1) > 0 (orthochronous: maps the upper
// sheet to itself).
struct LorentzMap {
  Mat m;

  static LorentzMap checked(Mat m);
  static LorentzMap identity(int sphere_dim);

  int sphere_dim() const { return static_cast<int>(m.rows()) - 2; }

  LorentzMap compose(const LorentzMap& inner) const; // this after inner
  LorentzMap inverse() const;                        // J M^T J

  MinkowskiVec apply(const MinkowskiVec& v) const;
  HPoint apply(const HPoint& p) const;
  TangentVec apply(const TangentVec& t) const;

private:
  explicit LorentzMap(Mat mat) : m(std::move(mat)) {}
};

// A spherical cap on the unit sphere S^d: unit center and radius in
// (0, pi/2). Radii at or beyond a hemisphere are rejected; every valid
// configuration this library handles keeps all caps below a hemisphere.
struct SphericalCap {
  Vec center;
  double radius = 0.0;

  static SphericalCap checked(Vec center, double radius);

  int sphere_dim() const { return static_cast<int>(center.size()) - 1; }
};

// ---------------------------------------------------------------------------
// Cap <-> pole and plane geometry

// Pole of a cap: s = (center, cos rho)/sin rho; <s,s> = 1 exactly by
// construction up to rounding.
MinkowskiVec cap_to_pole(const SphericalCap& cap);

// Inverse of cap_to_pole. Requires <s,s> = 1 within kFormTol and time > 0;
// a non-positive time means the cap would cover a hemisphere or more, which
// violates the orientation convention and throws geometry_error.
SphericalCap pole_to_cap(const MinkowskiVec& pole);

// Signed distance from p to the hyperbolic plane of the pole:
// arsinh(-<p,s>). Positive on the common-exterior side (the side the
// origin is on for a valid system), negative inside the half-space.
double plane_distance(const HPoint& p, const MinkowskiVec& pole);

// Unit tangent at p pointing toward the plane of the pole (when p is on the
// positive-distance side): w = (s + <p,s> p)/cosh(plane_distance).
TangentVec unit_normal_toward(const HPoint& p, const MinkowskiVec& pole);

// ---------------------------------------------------------------------------
// Charts and transport

// Poincare-ball coordinates b = spatial/(1 + time); |b| = tanh(dist(o,p)/2).
Vec ball_chart(const HPoint& p);
// Inverse chart: p = (2b, 1+|b|^2)/(1-|b|^2). Requires |b| < 1.
HPoint ball_chart_inv(const Vec& b);

// Geodesic from the base of v (unit tangent) with arclength s:
// cosh(s) p + sinh(s) v.
HPoint geodesic_exp(const TangentVec& v, double s);

// Hyperbolic distance arcosh(-<p,q>).
double distance(const HPoint& p, const HPoint& q);

// The canonical pure boost mapping p to the origin of the sheet. It is the
// unique symmetric positive Lorentz map doing so (no residual rotation).
LorentzMap boost_to_origin(const HPoint& p);

// Pure boost moving the origin distance |rapidity| along the unit spatial
// axis (toward +axis for positive rapidity).
LorentzMap pure_boost(const Vec& axis, double rapidity);

// Embeds a rotation R of R^{d+1} (orthogonal, det +1 expected) as a Lorentz
// map fixing the time axis.
LorentzMap embed_rotation(const Mat& rotation);

// Hyperbolic translation along the geodesic whose ideal endpoints are the
// unit sphere points q_attract and q_repel: points flow toward q_attract
// with the given rapidity. The two endpoints must be distinct.
LorentzMap translation_along(const Vec& q_attract, const Vec& q_repel,
                             double rapidity);

// Transforms a cap by conjugating its pole and renormalizing; throws
// geometry_error if the image covers a hemisphere (time component <= 0).
SphericalCap apply_cap(const LorentzMap& map, const SphericalCap& cap);

// Unit tangent at p toward the ideal point u (|u| = 1): the tangential
// projection of the light-like lift (u, 1), normalized. At the origin its
// spatial part equals u exactly.
TangentVec ideal_direction(const HPoint& p, const Vec& u);

// ---------------------------------------------------------------------------
// Half-plane cross-check

// Distances and tangent directions from the point (a, t), t > 0, of the
// upper half-plane to two hyperbolic lines: the positive y-axis and the
// half-circle |w| = r. The point must be strictly outside the circle
// (a^2 + t^2 > r^2). Tangent directions are reported by the y-component of
// the Euclidean-normalized tangent vector pointing toward the line.
struct HalfplaneCheck {
  double dist_axis = 0.0;
  double dist_circle = 0.0;
  double y_toward_axis = 0.0;
  double y_toward_circle = 0.0;
};
HalfplaneCheck halfplane_check(double a, double t, double r);

// ---------------------------------------------------------------------------
// Randomness (all deterministic in the seed; mt19937_64 is fully specified)

class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform in [0, 1), 53-bit resolution.
  double uniform();
  double uniform(double lo, double hi);
  // Standard normal via the polar method.
  double normal();
  Vec gaussian(int n);
  Vec unit_vector(int n);
  // Integer in [0, n).
  int below(int n);

private:
  std::mt19937_64 gen_;
};

// Haar-uniform rotation of R^n (det +1), via QR of a Gaussian matrix.
Mat random_rotation(Rng& rng, int n);

// Random isometry: uniform rotation composed with a boost along a uniform
// axis with rapidity uniform in [0, max_rapidity]. Deterministic in seed.
LorentzMap random_mobius(std::uint64_t seed, double max_rapidity,
                         int sphere_dim = 2);

} // namespace koebe::hyp
