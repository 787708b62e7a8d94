// SPDX-License-Identifier: MIT

#include "koebe/minkowski.hpp"

#include <cmath>

namespace koebe::hyp {

namespace {

Vec stack(const MinkowskiVec& v) {
  Vec out(v.spatial.size() + 1);
  out.head(v.spatial.size()) = v.spatial;
  out(v.spatial.size()) = v.time;
  return out;
}

MinkowskiVec unstack(const Vec& w) {
  return {w.head(w.size() - 1), w(w.size() - 1)};
}

Mat minkowski_J(int rows) {
  Vec d = Vec::Ones(rows);
  d(rows - 1) = -1.0;
  return d.asDiagonal();
}

} // namespace

double mdot(const MinkowskiVec& x, const MinkowskiVec& y) {
  return x.spatial.dot(y.spatial) - x.time * y.time;
}

// --- HPoint --------------------------------------------------------------

HPoint HPoint::checked(MinkowskiVec v) {
  if (std::abs(mdot(v, v) + 1.0) > kFormTol)
    throw geometry_error("point does not satisfy <p,p> = -1");
  if (v.time <= 0.0)
    throw geometry_error("point lies on the lower sheet (time <= 0)");
  return HPoint(std::move(v));
}

HPoint HPoint::normalized(MinkowskiVec v) {
  const double q = mdot(v, v);
  if (!(q < 0.0))
    throw geometry_error("cannot normalize a non-time-like vector onto the sheet");
  if (v.time <= 0.0)
    throw geometry_error("point lies on the lower sheet (time <= 0)");
  const double s = 1.0 / std::sqrt(-q);
  return HPoint(MinkowskiVec{v.spatial * s, v.time * s});
}

HPoint HPoint::origin(int sphere_dim) {
  return HPoint(MinkowskiVec{Vec::Zero(sphere_dim + 1), 1.0});
}

// --- TangentVec ----------------------------------------------------------

TangentVec TangentVec::checked(HPoint base, MinkowskiVec vec) {
  if (std::abs(mdot(vec, base.v)) > kFormTol)
    throw geometry_error("vector is not tangent at its base point");
  return TangentVec{std::move(base), std::move(vec)};
}

TangentVec TangentVec::projected(const HPoint& base, const MinkowskiVec& vec) {
  // <p,p> = -1, so adding <v,p> p kills the normal component.
  MinkowskiVec t = vec + mdot(vec, base.v) * base.v;
  return TangentVec{base, std::move(t)};
}

double TangentVec::norm() const {
  return std::sqrt(std::max(0.0, mdot(vec, vec)));
}

TangentVec TangentVec::normalized() const {
  const double n = norm();
  if (n < 1e-300)
    throw geometry_error("cannot normalize a zero tangent vector");
  return TangentVec{base, vec * (1.0 / n)};
}

// --- LorentzMap ----------------------------------------------------------

LorentzMap LorentzMap::checked(Mat m) {
  if (m.rows() != m.cols() || m.rows() < 3)
    throw geometry_error("Lorentz matrix must be square, size >= 3");
  const Mat J = minkowski_J(static_cast<int>(m.rows()));
  const double err = (m.transpose() * J * m - J).cwiseAbs().maxCoeff();
  if (err > kFormTol)
    throw geometry_error("matrix does not preserve the Minkowski form");
  if (m(m.rows() - 1, m.cols() - 1) <= 0.0)
    throw geometry_error("matrix is not orthochronous");
  return LorentzMap(std::move(m));
}

LorentzMap LorentzMap::identity(int sphere_dim) {
  return LorentzMap(Mat::Identity(sphere_dim + 2, sphere_dim + 2));
}

LorentzMap LorentzMap::compose(const LorentzMap& inner) const {
  return LorentzMap::checked(m * inner.m);
}

LorentzMap LorentzMap::inverse() const {
  const Mat J = minkowski_J(static_cast<int>(m.rows()));
  return LorentzMap(J * m.transpose() * J);
}

MinkowskiVec LorentzMap::apply(const MinkowskiVec& v) const {
  return unstack(m * stack(v));
}

HPoint LorentzMap::apply(const HPoint& p) const {
  return HPoint::normalized(apply(p.v));
}

TangentVec LorentzMap::apply(const TangentVec& t) const {
  return TangentVec::projected(apply(t.base), apply(t.vec));
}

// --- SphericalCap --------------------------------------------------------

SphericalCap SphericalCap::checked(Vec center, double radius) {
  if (center.size() < 2)
    throw geometry_error("cap center must live on a sphere of dimension >= 1");
  if (std::abs(center.norm() - 1.0) > 1e-9)
    throw geometry_error("cap center must be a unit vector");
  if (!(radius > 0.0) || !(radius < M_PI / 2.0))
    throw geometry_error("cap radius must lie strictly between 0 and pi/2");
  return SphericalCap{std::move(center), radius};
}

MinkowskiVec cap_to_pole(const SphericalCap& cap) {
  const double s = std::sin(cap.radius);
  return {cap.center / s, std::cos(cap.radius) / s};
}

SphericalCap pole_to_cap(const MinkowskiVec& pole) {
  if (std::abs(mdot(pole, pole) - 1.0) > kFormTol)
    throw geometry_error("pole is not a unit space-like vector");
  if (pole.time <= 0.0)
    throw geometry_error(
        "pole has non-positive time: the cap would cover a hemisphere, "
        "which the orientation convention excludes");
  const double nsp = pole.spatial.norm(); // = 1/sin(radius)
  return SphericalCap{pole.spatial / nsp, std::atan2(1.0, pole.time)};
}

double plane_distance(const HPoint& p, const MinkowskiVec& pole) {
  return std::asinh(-mdot(p.v, pole));
}

TangentVec unit_normal_toward(const HPoint& p, const MinkowskiVec& pole) {
  const double ip = mdot(p.v, pole);       // -sinh(distance)
  const double ch = std::sqrt(1.0 + ip * ip); // cosh(distance)
  MinkowskiVec w = (pole + ip * p.v) * (1.0 / ch);
  return TangentVec::projected(p, w).normalized();
}

// --- charts and transport ------------------------------------------------

Vec ball_chart(const HPoint& p) {
  return p.v.spatial / (1.0 + p.v.time);
}

HPoint ball_chart_inv(const Vec& b) {
  const double n2 = b.squaredNorm();
  if (!(n2 < 1.0))
    throw geometry_error("ball-chart coordinates must have norm < 1");
  const double s = 1.0 / (1.0 - n2);
  return HPoint::checked(MinkowskiVec{2.0 * s * b, (1.0 + n2) * s});
}

HPoint geodesic_exp(const TangentVec& v, double s) {
  if (std::abs(mdot(v.vec, v.vec) - 1.0) > 1e-8)
    throw geometry_error("geodesic_exp needs a unit tangent vector");
  return HPoint::normalized(std::cosh(s) * v.base.v + std::sinh(s) * v.vec);
}

double distance(const HPoint& p, const HPoint& q) {
  return std::acosh(std::max(1.0, -mdot(p.v, q.v)));
}

LorentzMap boost_to_origin(const HPoint& p) {
  const int n = static_cast<int>(p.v.spatial.size());
  const double r = p.v.spatial.norm(); // = sinh(dist to origin)
  if (r < 1e-15) return LorentzMap::identity(p.sphere_dim());
  const Vec u = p.v.spatial / r;
  const double t = p.v.time; // = cosh(dist)
  Mat m(n + 1, n + 1);
  m.topLeftCorner(n, n) = Mat::Identity(n, n) + (t - 1.0) * u * u.transpose();
  m.topRightCorner(n, 1) = -p.v.spatial;
  m.bottomLeftCorner(1, n) = -p.v.spatial.transpose();
  m(n, n) = t;
  return LorentzMap::checked(std::move(m));
}

LorentzMap pure_boost(const Vec& axis, double rapidity) {
  const int n = static_cast<int>(axis.size());
  const Vec u = axis.normalized();
  const double c = std::cosh(rapidity), s = std::sinh(rapidity);
  Mat m(n + 1, n + 1);
  m.topLeftCorner(n, n) = Mat::Identity(n, n) + (c - 1.0) * u * u.transpose();
  m.topRightCorner(n, 1) = s * u;
  m.bottomLeftCorner(1, n) = s * u.transpose();
  m(n, n) = c;
  return LorentzMap::checked(std::move(m));
}

LorentzMap embed_rotation(const Mat& rotation) {
  const int n = static_cast<int>(rotation.rows());
  Mat m = Mat::Identity(n + 1, n + 1);
  m.topLeftCorner(n, n) = rotation;
  return LorentzMap::checked(std::move(m));
}

LorentzMap translation_along(const Vec& q_attract, const Vec& q_repel,
                             double rapidity) {
  const int n = static_cast<int>(q_attract.size());
  Vec la(n + 1), lr(n + 1);
  la << q_attract, 1.0;
  lr << q_repel, 1.0;
  const double g = q_attract.dot(q_repel) - 1.0; // <la, lr>, negative
  if (g > -1e-12)
    throw geometry_error("translation axis needs two distinct ideal points");
  const Mat J = minkowski_J(n + 1);
  Mat m = Mat::Identity(n + 1, n + 1);
  m += (std::exp(rapidity) - 1.0) / g * la * (J * lr).transpose();
  m += (std::exp(-rapidity) - 1.0) / g * lr * (J * la).transpose();
  return LorentzMap::checked(std::move(m));
}

SphericalCap apply_cap(const LorentzMap& map, const SphericalCap& cap) {
  MinkowskiVec s = map.apply(cap_to_pole(cap));
  const double q = mdot(s, s);
  if (!(q > 0.0))
    throw geometry_error("transformed pole lost its space-like character");
  const double inv = 1.0 / std::sqrt(q);
  return pole_to_cap({s.spatial * inv, s.time * inv});
}

TangentVec ideal_direction(const HPoint& p, const Vec& u) {
  if (std::abs(u.norm() - 1.0) > 1e-9)
    throw geometry_error("ideal point must be a unit vector");
  const MinkowskiVec l{u, 1.0};
  const double a = mdot(l, p.v); // = u.x - t, always negative
  MinkowskiVec w = (l + a * p.v) * (-1.0 / a);
  return TangentVec::projected(p, w).normalized();
}

// --- half-plane cross-check ----------------------------------------------

HalfplaneCheck halfplane_check(double a, double t, double r) {
  if (!(t > 0.0)) throw geometry_error("half-plane point needs t > 0");
  if (!(r > 0.0)) throw geometry_error("circle radius must be positive");
  const double p2 = a * a + t * t;
  if (!(p2 > r * r))
    throw geometry_error("point must lie strictly outside the circle");
  HalfplaneCheck out;
  out.dist_axis = std::asinh(a / t);
  out.dist_circle = std::asinh((t * t + a * a - r * r) / (2.0 * r * t));
  out.y_toward_axis = a / std::sqrt(p2);
  const double q = (r * r + a * a + t * t);
  out.y_toward_circle =
      -(t * t + r * r - a * a) / std::sqrt(q * q - 4.0 * r * r * a * a);
  return out;
}

// --- randomness ----------------------------------------------------------

double Rng::uniform() {
  return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

double Rng::normal() {
  // Marsaglia polar method; no caching so draws stay easy to reason about.
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  return u * std::sqrt(-2.0 * std::log(s) / s);
}

Vec Rng::gaussian(int n) {
  Vec out(n);
  for (int i = 0; i < n; ++i) out(i) = normal();
  return out;
}

Vec Rng::unit_vector(int n) {
  while (true) {
    Vec g = gaussian(n);
    const double nn = g.norm();
    if (nn > 1e-12) return g / nn;
  }
}

int Rng::below(int n) {
  return static_cast<int>(uniform() * n) % n;
}

Mat random_rotation(Rng& rng, int n) {
  Mat a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = rng.normal();
  Eigen::HouseholderQR<Mat> qr(a);
  Mat q = qr.householderQ();
  const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i)
    if (r(i, i) < 0.0) q.col(i) = -q.col(i);
  if (q.determinant() < 0.0) q.col(0) = -q.col(0);
  return q;
}

LorentzMap random_mobius(std::uint64_t seed, double max_rapidity,
                         int sphere_dim) {
  Rng rng(seed);
  const int n = sphere_dim + 1;
  const Mat rot = random_rotation(rng, n);
  const Vec axis = rng.unit_vector(n);
  const double chi = rng.uniform(0.0, max_rapidity);
  return embed_rotation(rot).compose(pure_boost(axis, chi));
}

} // namespace koebe::hyp
