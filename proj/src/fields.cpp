// SPDX-License-Identifier: MIT

#include "koebe/fields.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "koebe/errors.hpp"

namespace koebe {

namespace {

using hyp::HPoint;
using hyp::MinkowskiVec;
using hyp::SphericalCap;
using hyp::TangentVec;
using hyp::mdot;

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> plane_distances(const std::vector<SphericalCap>& caps,
                                    const HPoint& p) {
  std::vector<double> d(caps.size());
  for (std::size_t i = 0; i < caps.size(); ++i) {
    d[i] = hyp::plane_distance(p, hyp::cap_to_pole(caps[i]));
  }
  return d;
}

void require_domain(const std::vector<double>& d, const char* what) {
  for (double v : d) {
    if (!(v > 0.0)) {
      throw geometry_error(std::string(what) +
                           ": evaluation point is outside the common "
                           "exterior of the cap planes");
    }
  }
}

std::vector<TangentVec> plane_normals(const std::vector<SphericalCap>& caps,
                                      const HPoint& p) {
  std::vector<TangentVec> n;
  n.reserve(caps.size());
  for (const auto& cap : caps) {
    n.push_back(hyp::unit_normal_toward(p, hyp::cap_to_pole(cap)));
  }
  return n;
}

FieldEval assemble(const HPoint& p, std::vector<FieldTerm> terms) {
  MinkowskiVec sum{Vec::Zero(p.v.spatial.size()), 0.0};
  double mincoef = terms.empty() ? 0.0 : kInf;
  for (const auto& t : terms) {
    sum += t.vec;
    mincoef = std::min(mincoef, t.coefficient);
  }
  TangentVec total = TangentVec::projected(p, sum);
  FieldEval ev{p, total, total.norm(), mincoef, std::move(terms)};
  return ev;
}

void require_positive(const FieldEval& ev, const char* what) {
  if (!ev.terms.empty() && !(ev.min_coefficient > 0.0)) {
    throw geometry_error(std::string(what) +
                         ": non-positive field coefficient " +
                         std::to_string(ev.min_coefficient));
  }
}

// Intrinsic angle of a plane at distance d > 0: the cap radius the plane
// would have if p were moved to the chart origin. cos a = tanh d, so
// tan a = 1/sinh d and sec a = 1/tanh d.
double intrinsic_angle(double d) { return std::acos(std::tanh(d)); }

// Per-face corner weights of the cone circumcenter: Gram matrix with unit
// diagonal and cos(a_r + a_s) off-diagonal against right-hand side
// 1/(2 cos a_r). Same linear system as the cap-space circumcenter, built
// from intrinsic angles.
Eigen::Vector3d cone_weights(double a0, double a1, double a2) {
  Eigen::Matrix3d g;
  const double a[3] = {a0, a1, a2};
  for (int r = 0; r < 3; ++r) {
    for (int s = 0; s < 3; ++s) {
      g(r, s) = (r == s) ? 1.0 : std::cos(a[r] + a[s]);
    }
  }
  Eigen::Vector3d rhs;
  for (int r = 0; r < 3; ++r) rhs(r) = 0.5 / std::cos(a[r]);
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(
      g, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const double cond =
      svd.singularValues()(0) / std::max(svd.singularValues()(2), 1e-300);
  if (cond > 1e12) {
    throw geometry_error("cone circumcenter weights: Gram system is "
                         "numerically singular (condition " +
                         std::to_string(cond) + ")");
  }
  return svd.solve(rhs);
}

std::string vkey(int i) { return "v" + std::to_string(i); }
std::string fkey(int j) { return "f" + std::to_string(j); }
std::string ekey(int e) { return "e" + std::to_string(e); }
std::string fvkey(int j, int i) {
  return "f" + std::to_string(j) + ":v" + std::to_string(i);
}

struct SystemFrame {
  std::vector<double> dv, df;              // plane distances
  std::vector<double> av, af;              // intrinsic angles
  std::vector<TangentVec> nv, nf;          // unit normals toward planes
};

SystemFrame frame_at(const CapSystem& sys, const HPoint& p,
                     const char* what) {
  SystemFrame fr;
  fr.dv = plane_distances(sys.vertex_caps, p);
  fr.df = plane_distances(sys.face_caps, p);
  require_domain(fr.dv, what);
  require_domain(fr.df, what);
  fr.av.resize(fr.dv.size());
  fr.af.resize(fr.df.size());
  for (std::size_t i = 0; i < fr.dv.size(); ++i)
    fr.av[i] = intrinsic_angle(fr.dv[i]);
  for (std::size_t j = 0; j < fr.df.size(); ++j)
    fr.af[j] = intrinsic_angle(fr.df[j]);
  fr.nv = plane_normals(sys.vertex_caps, p);
  fr.nf = plane_normals(sys.face_caps, p);
  return fr;
}

// ---------------------------------------------------------------------------
// Lift paths (intrinsic-angle route)

FieldEval lift_cm0(const CapSystem& sys, const HPoint& p) {
  auto fr = frame_at(sys, p, "cm0 field");
  std::vector<FieldTerm> terms;
  terms.reserve(fr.av.size());
  for (std::size_t i = 0; i < fr.av.size(); ++i) {
    const double w = 1.0 / std::cos(fr.av[i]); // vertex at sec(a) toward n
    terms.push_back({vkey(static_cast<int>(i)), fr.nv[i].vec * w, w});
  }
  return assemble(p, std::move(terms));
}

FieldEval lift_cm1(const CapSystem& sys, const HPoint& p) {
  auto fr = frame_at(sys, p, "cm1 field");
  const int n = sys.n_vertices();
  std::vector<double> w(n, 0.0);
  for (const auto& e : sys.combo.edges) {
    // Edge length tan a_i + tan a_j weights both endpoint vertices.
    const double len = std::tan(fr.av[e[0]]) + std::tan(fr.av[e[1]]);
    w[e[0]] += len / std::cos(fr.av[e[0]]);
    w[e[1]] += len / std::cos(fr.av[e[1]]);
  }
  std::vector<FieldTerm> terms;
  terms.reserve(n);
  for (int i = 0; i < n; ++i) {
    terms.push_back({vkey(i), fr.nv[i].vec * w[i], w[i]});
  }
  return assemble(p, std::move(terms));
}

// Shared kite decomposition for the surface and solid mass centers. Each
// vertex/face incidence contributes a right kite with vertex tangent length
// t = tan a_v and face incircle radius s = sin a_f; its centroid splits
// between the face touching point (weight 2t^2+s^2) and the vertex (weight
// t^2+2s^2) over t^2+s^2. with_height scales by the face-plane height
// cos a_f, turning area weights into cone volume weights.
FieldEval lift_kite(const CapSystem& sys, const HPoint& p, bool with_height,
                    const char* what) {
  auto fr = frame_at(sys, p, what);
  const int n = sys.n_vertices();
  const int m = sys.combo.n_faces();
  std::vector<double> wv(n, 0.0), wf(m, 0.0);
  for (int j = 0; j < m; ++j) {
    const double b = fr.af[j];
    for (int i : sys.combo.faces[j]) {
      const double a = fr.av[i];
      const double t = std::tan(a);
      const double s = std::sin(b);
      double k = t * s; // kite area
      if (with_height) k *= std::cos(b);
      const double den = t * t + s * s;
      wf[j] += k * (2.0 * t * t + s * s) / den * std::cos(b);
      wv[i] += k * (t * t + 2.0 * s * s) / den / std::cos(a);
    }
  }
  std::vector<FieldTerm> terms;
  terms.reserve(n + m);
  for (int i = 0; i < n; ++i)
    terms.push_back({vkey(i), fr.nv[i].vec * wv[i], wv[i]});
  for (int j = 0; j < m; ++j)
    terms.push_back({fkey(j), fr.nf[j].vec * wf[j], wf[j]});
  return assemble(p, std::move(terms));
}

FieldEval lift_tangency(const CapSystem& sys, const HPoint& p) {
  if (!in_domain(sys, p)) {
    throw geometry_error("tangency field: evaluation point is outside the "
                         "common exterior of the cap planes");
  }
  const auto pts = edge_tangency_points(sys);
  std::vector<FieldTerm> terms;
  terms.reserve(pts.size());
  for (std::size_t e = 0; e < pts.size(); ++e) {
    TangentVec dir = hyp::ideal_direction(p, pts[e]);
    terms.push_back({ekey(static_cast<int>(e)), dir.vec, 1.0});
  }
  return assemble(p, std::move(terms));
}

FieldEval lift_ccm(const CapSystem& sys, const HPoint& p) {
  if (!sys.combo.simplicial()) {
    throw not_supported_error(
        "circumcentric field requires triangular faces");
  }
  auto fr = frame_at(sys, p, "ccm field");
  std::vector<FieldTerm> terms;
  for (int j = 0; j < sys.combo.n_faces(); ++j) {
    const auto& face = sys.combo.faces[j];
    const double t0 = std::tan(fr.av[face[0]]);
    const double t1 = std::tan(fr.av[face[1]]);
    const double t2 = std::tan(fr.av[face[2]]);
    const double m = simplex_volume(t0, t1, t2);
    const Eigen::Vector3d mu =
        cone_weights(fr.av[face[0]], fr.av[face[1]], fr.av[face[2]]);
    // mu are coordinates of the cone circumcenter in the basis of unit
    // plane normals, so they weight the normals directly.
    for (int s = 0; s < 3; ++s) {
      const int i = face[s];
      const double w = m * mu(s);
      terms.push_back({fvkey(j, i), fr.nv[i].vec * w, w});
    }
  }
  return assemble(p, std::move(terms));
}

FieldEval blend(const HPoint& p, const FieldEval& a, const FieldEval& b,
                double la, double lb, const char* pa, const char* pb) {
  std::vector<FieldTerm> terms;
  terms.reserve(a.terms.size() + b.terms.size());
  for (const auto& t : a.terms) {
    terms.push_back({std::string(pa) + t.key, t.vec * la, t.coefficient * la});
  }
  for (const auto& t : b.terms) {
    terms.push_back({std::string(pb) + t.key, t.vec * lb, t.coefficient * lb});
  }
  return assemble(p, std::move(terms));
}

double weight_of(WeightFamily family, double power, double d) {
  switch (family) {
  case WeightFamily::Sec:
    return 1.0 / std::tanh(d);
  case WeightFamily::Tan:
    return 1.0 / std::sinh(d);
  case WeightFamily::PowSec:
    return std::pow(1.0 / std::tanh(d), power);
  }
  throw not_supported_error("unknown weight family");
}

// Antiderivative of coth^k on (0, inf) for integer k >= 0:
// I_0 = d, I_1 = log sinh d, I_k = I_{k-2} - coth^{k-1} d / (k-1).
double coth_power_integral(int k, double d) {
  if (k == 0) return d;
  if (k == 1) return std::log(std::sinh(d));
  return coth_power_integral(k - 2, d) -
         std::pow(1.0 / std::tanh(d), k - 1) / (k - 1);
}

double simpson(double power, double a, double b) {
  auto f = [power](double x) {
    return std::pow(1.0 / std::tanh(x), power);
  };
  const double m = 0.5 * (a + b);
  return (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b));
}

// Adaptive Simpson quadrature of coth^power, absolute tolerance 1e-10.
double adaptive(double power, double a, double b, double whole, double tol,
                int depth) {
  const double m = 0.5 * (a + b);
  const double left = simpson(power, a, m);
  const double right = simpson(power, m, b);
  if (depth > 40 || std::abs(left + right - whole) < 15.0 * tol) {
    return left + right + (left + right - whole) / 15.0;
  }
  return adaptive(power, a, m, left, 0.5 * tol, depth + 1) +
         adaptive(power, m, b, right, 0.5 * tol, depth + 1);
}

double potential_of(WeightFamily family, double power, double d) {
  switch (family) {
  case WeightFamily::Sec:
    return std::log(std::sinh(d));
  case WeightFamily::Tan:
    return std::log(std::tanh(0.5 * d));
  case WeightFamily::PowSec: {
    const double r = std::round(power);
    if (std::abs(power - r) < 1e-12 && r >= 0.0) {
      return coth_power_integral(static_cast<int>(r), d);
    }
    // Reference point 1.0 fixes the irrelevant integration constant.
    const double sign = d >= 1.0 ? 1.0 : -1.0;
    const double lo = std::min(d, 1.0), hi = std::max(d, 1.0);
    return sign * adaptive(power, lo, hi, simpson(power, lo, hi), 1e-10, 0);
  }
  }
  throw not_supported_error("unknown weight family");
}

} // namespace

// ---------------------------------------------------------------------------
// Domain queries

bool in_domain(const std::vector<hyp::SphericalCap>& caps,
               const hyp::HPoint& p) {
  return domain_margin(caps, p) > 0.0;
}

double domain_margin(const std::vector<hyp::SphericalCap>& caps,
                     const hyp::HPoint& p) {
  double margin = kInf;
  for (const auto& cap : caps) {
    margin = std::min(margin, hyp::plane_distance(p, hyp::cap_to_pole(cap)));
  }
  return margin;
}

bool in_domain(const CapSystem& sys, const hyp::HPoint& p) {
  return domain_margin(sys, p) > 0.0;
}

// ---------------------------------------------------------------------------
// Generic lift

FieldEval lift_field(const CenterSpec& spec, const CapSystem& sys,
                     const hyp::HPoint& p) {
  switch (spec.kind) {
  case CenterKind::CM0: {
    FieldEval ev = lift_cm0(sys, p);
    require_positive(ev, "cm0 field");
    return ev;
  }
  case CenterKind::CM1: {
    FieldEval ev = lift_cm1(sys, p);
    require_positive(ev, "cm1 field");
    return ev;
  }
  case CenterKind::CM2: {
    FieldEval ev = lift_kite(sys, p, false, "cm2 field");
    require_positive(ev, "cm2 field");
    return ev;
  }
  case CenterKind::CM3: {
    FieldEval ev = lift_kite(sys, p, true, "cm3 field");
    require_positive(ev, "cm3 field");
    return ev;
  }
  case CenterKind::Tangency: {
    FieldEval ev = lift_tangency(sys, p);
    require_positive(ev, "tangency field");
    return ev;
  }
  case CenterKind::CCM:
    return lift_ccm(sys, p); // weights may legitimately change sign
  case CenterKind::Euler:
    return field_lambda(p, sys, spec.lambda);
  case CenterKind::WeightedCaps:
    return weighted_cap_field(p, sys.vertex_caps, spec.family, spec.power);
  case CenterKind::CC:
  case CenterKind::IC:
    throw not_supported_error(
        "min-max centers have no smooth field; use the minimax solver");
  }
  throw not_supported_error("unknown center kind");
}

double lift_kappa(const CenterSpec& spec, const CapSystem& sys) {
  const Polyhedron poly = reconstruct(sys);
  switch (spec.kind) {
  case CenterKind::CM0:
    return static_cast<double>(sys.n_vertices());
  case CenterKind::CM1:
    return 2.0 * poly.total_edge_length;
  case CenterKind::CM2:
    return 3.0 * poly.surface_area;
  case CenterKind::CM3:
    return 12.0 * poly.volume; // 4 x the cone-area sum 3V
  case CenterKind::Tangency:
    return static_cast<double>(sys.combo.n_edges());
  case CenterKind::CCM:
    return ccm(sys).normalizer; // total volume of the corner simplices
  case CenterKind::Euler:
    return spec.lambda * 12.0 * poly.volume +
           (1.0 - spec.lambda) * ccm(sys).normalizer;
  case CenterKind::WeightedCaps:
    if (spec.family == WeightFamily::Sec) {
      return static_cast<double>(sys.n_vertices());
    }
    throw not_supported_error(
        "no exact origin constant for this weight family");
  case CenterKind::CC:
  case CenterKind::IC:
    break;
  }
  throw not_supported_error("no field constant for this center");
}

// ---------------------------------------------------------------------------
// Verbatim paths (hyperbolic-function route)

FieldEval field_cm1_verbatim(const hyp::HPoint& p, const CapSystem& sys) {
  auto fr = frame_at(sys, p, "cm1 field");
  std::vector<FieldTerm> terms;
  terms.reserve(sys.combo.edges.size());
  for (std::size_t e = 0; e < sys.combo.edges.size(); ++e) {
    const int i = sys.combo.edges[e][0];
    const int j = sys.combo.edges[e][1];
    const double di = fr.dv[i], dj = fr.dv[j];
    const double c = 1.0 / std::sinh(di) + 1.0 / std::sinh(dj);
    MinkowskiVec v = fr.nv[i].vec * (c / std::tanh(di)) +
                     fr.nv[j].vec * (c / std::tanh(dj));
    terms.push_back({ekey(static_cast<int>(e)), v, c});
  }
  return assemble(p, std::move(terms));
}

namespace {

FieldEval cm_faces_verbatim(const hyp::HPoint& p, const CapSystem& sys,
                            bool solid, const char* what) {
  auto fr = frame_at(sys, p, what);
  std::vector<FieldTerm> terms;
  for (int j = 0; j < sys.combo.n_faces(); ++j) {
    const double df = fr.df[j];
    const double ch = std::cosh(df), th = std::tanh(df);
    for (int i : sys.combo.faces[j]) {
      const double dvtx = fr.dv[i];
      const double sh = std::sinh(dvtx);
      const double den = ch * ch + sh * sh;
      const double pre = solid ? std::sinh(df) / (sh * ch * ch)
                               : 1.0 / (sh * ch);
      const double cf = pre * (2.0 * ch * ch + sh * sh) / den * th;
      const double cv = pre * (ch * ch + 2.0 * sh * sh) / den / std::tanh(dvtx);
      MinkowskiVec v = fr.nf[j].vec * cf + fr.nv[i].vec * cv;
      terms.push_back({fvkey(j, i), v, std::min(cf, cv)});
    }
  }
  return assemble(p, std::move(terms));
}

} // namespace

FieldEval field_cm2_verbatim(const hyp::HPoint& p, const CapSystem& sys) {
  return cm_faces_verbatim(p, sys, false, "cm2 field");
}

FieldEval field_cm3_verbatim(const hyp::HPoint& p, const CapSystem& sys) {
  return cm_faces_verbatim(p, sys, true, "cm3 field");
}

FieldEval field_ccm(const hyp::HPoint& p, const CapSystem& sys) {
  return lift_ccm(sys, p);
}

FieldEval field_ccm_verbatim(const hyp::HPoint& p, const CapSystem& sys) {
  if (!sys.combo.simplicial()) {
    throw not_supported_error(
        "circumcentric field requires triangular faces");
  }
  auto fr = frame_at(sys, p, "ccm field");
  std::vector<FieldTerm> terms;
  for (int j = 0; j < sys.combo.n_faces(); ++j) {
    const auto& face = sys.combo.faces[j];
    double tau[3];
    for (int s = 0; s < 3; ++s) tau[s] = 1.0 / std::sinh(fr.dv[face[s]]);
    const double rad =
        tau[0] * tau[1] * tau[2] *
        (tau[0] + tau[1] + tau[2] - tau[0] * tau[1] * tau[2]);
    if (!(rad > 0.0)) {
      throw geometry_error(
          "circumcentric field: corner simplex degenerates near the "
          "cap boundaries");
    }
    for (int s = 0; s < 3; ++s) {
      const double ta = tau[s], tb = tau[(s + 1) % 3], tc = tau[(s + 2) % 3];
      const double num =
          (tb + tc) * (ta * ta * (tb + tc) +
                       ta * (2.0 * tb * tb * tc * tc + tb * tb + tc * tc) -
                       tb * tc * (tb + tc));
      const double w = std::tanh(fr.dv[face[s]]) * num / std::sqrt(rad);
      terms.push_back({fvkey(j, face[s]), fr.nv[face[s]].vec * w, w});
    }
  }
  return assemble(p, std::move(terms));
}

FieldEval field_lambda(const hyp::HPoint& p, const CapSystem& sys,
                       double lambda) {
  if (!(lambda >= 0.0 && lambda < 1.0)) {
    throw not_supported_error("blend parameter must lie in [0, 1)");
  }
  FieldEval cm = lift_kite(sys, p, true, "cm3 field");
  FieldEval cc = field_ccm(p, sys);
  return blend(p, cm, cc, lambda, 1.0 - lambda, "cm3:", "ccm:");
}

// ---------------------------------------------------------------------------
// Weighted caps

FieldEval weighted_cap_field(const hyp::HPoint& p,
                             const std::vector<hyp::SphericalCap>& caps,
                             WeightFamily family, double power) {
  auto d = plane_distances(caps, p);
  require_domain(d, "weighted cap field");
  std::vector<FieldTerm> terms;
  terms.reserve(caps.size());
  for (std::size_t i = 0; i < caps.size(); ++i) {
    const double w = weight_of(family, power, d[i]);
    TangentVec n = hyp::unit_normal_toward(p, hyp::cap_to_pole(caps[i]));
    terms.push_back({"c" + std::to_string(i), n.vec * w, w});
  }
  FieldEval ev = assemble(p, std::move(terms));
  require_positive(ev, "weighted cap field");
  return ev;
}

double potential(const hyp::HPoint& p,
                 const std::vector<hyp::SphericalCap>& caps,
                 WeightFamily family, double power) {
  auto d = plane_distances(caps, p);
  require_domain(d, "cap potential");
  double sum = 0.0;
  for (double di : d) sum += potential_of(family, power, di);
  return sum;
}

// ---------------------------------------------------------------------------
// Solvability hypotheses

namespace {

// Limit of w(t) cos t as the cap closes on its boundary point (t -> pi/2):
// contribution of one cap inside the coincidence set.
double blowup_unit(WeightFamily family, double power) {
  switch (family) {
  case WeightFamily::Sec:
    return 1.0;
  case WeightFamily::Tan:
    return 1.0;
  case WeightFamily::PowSec:
    return power > 1.0 ? kInf : 1.0;
  }
  return kInf;
}

// Limit of w(t) as the cap shrinks to a point (t -> 0): contribution of one
// cap outside the coincidence set.
double shrink_unit(WeightFamily family, double /*power*/) {
  switch (family) {
  case WeightFamily::Sec:
    return 1.0;
  case WeightFamily::Tan:
    return 0.0;
  case WeightFamily::PowSec:
    return 1.0;
  }
  return 0.0;
}

// All caps whose boundary passes through the unit-sphere point q.
std::vector<int> coincidence_set(const std::vector<SphericalCap>& caps,
                                 const Vec& q, double tol) {
  std::vector<int> out;
  for (std::size_t k = 0; k < caps.size(); ++k) {
    if (std::abs(q.dot(caps[k].center) - std::cos(caps[k].radius)) <= tol) {
      out.push_back(static_cast<int>(k));
    }
  }
  return out;
}

// Boundary circles of two caps on S^2 meet in up to two points
// q = x c_i + y c_j +- z (c_i x c_j)/|c_i x c_j|.
std::vector<Vec> pair_points_s2(const SphericalCap& a, const SphericalCap& b) {
  std::vector<Vec> pts;
  const double g = a.center.dot(b.center);
  const double det = 1.0 - g * g;
  if (det < 1e-14) return pts; // concentric boundaries never cross
  const double ca = std::cos(a.radius), cb = std::cos(b.radius);
  const double x = (ca - g * cb) / det;
  const double y = (cb - g * ca) / det;
  Eigen::Vector3d u = a.center.head<3>(), v = b.center.head<3>();
  Eigen::Vector3d w = u.cross(v);
  const double wn = w.norm();
  if (wn < 1e-12) return pts;
  const double z2 = 1.0 - (x * x + 2.0 * x * y * g + y * y);
  if (z2 < -1e-12) return pts;
  const double z = std::sqrt(std::max(0.0, z2));
  Vec base = x * a.center + y * b.center;
  Vec q1 = base + (z / wn) * Vec(w);
  Vec q2 = base - (z / wn) * Vec(w);
  pts.push_back(q1.normalized());
  if (z > 1e-12) pts.push_back(q2.normalized());
  return pts;
}

// A common boundary point of three caps on S^d, d >= 3, if one exists:
// min-norm solution of the three linear constraints, pushed onto the unit
// sphere along the null space.
bool triple_point_highdim(const std::vector<SphericalCap>& caps, int i, int j,
                          int k, Vec& q_out) {
  const int dim = static_cast<int>(caps[i].center.size());
  Eigen::MatrixXd c(3, dim);
  Eigen::Vector3d rhs;
  const int idx[3] = {i, j, k};
  for (int r = 0; r < 3; ++r) {
    c.row(r) = caps[idx[r]].center.transpose();
    rhs(r) = std::cos(caps[idx[r]].radius);
  }
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(c);
  Vec q0 = cod.solve(rhs);
  if ((c * q0 - rhs).norm() > 1e-9) return false; // inconsistent constraints
  const double n0 = q0.norm();
  if (n0 > 1.0 + 1e-9) return false; // affine solution set misses the sphere
  Eigen::FullPivLU<Eigen::MatrixXd> lu(c);
  Eigen::MatrixXd null = lu.kernel();
  if (null.cols() == 0) {
    q_out = q0 / std::max(n0, 1e-300);
    return n0 > 1.0 - 1e-9;
  }
  const double t = std::sqrt(std::max(0.0, 1.0 - n0 * n0));
  q_out = q0 + t * null.col(0).normalized();
  q_out.normalize();
  return true;
}

} // namespace

std::string ConditionReport::summary() const {
  std::ostringstream os;
  if (unsupported) {
    os << "solvability check unsupported: four or more cap boundaries "
          "meet at a point (n = "
       << n_caps << ")";
    return os.str();
  }
  if (passes) {
    os << "solvability condition holds for all " << entries.size()
       << " realized coincidence sets (n = " << n_caps << " caps)";
    return os.str();
  }
  for (const auto& e : entries) {
    if (e.ok) continue;
    os << "solvability condition fails: |I(q)| = " << e.indices.size()
       << " needs limit " << e.lhs << " < " << e.rhs << ", n = " << n_caps;
    return os.str();
  }
  return "solvability condition fails";
}

ConditionReport check_condition(const std::vector<hyp::SphericalCap>& caps,
                                WeightFamily family, double power) {
  const double tol = 1e-9;
  const int n = static_cast<int>(caps.size());
  ConditionReport rep;
  rep.n_caps = n;
  if (n == 0) return rep;
  const int d = caps[0].sphere_dim();

  const double lhs1 = blowup_unit(family, power);
  const double rhs1 = shrink_unit(family, power);

  std::set<std::vector<int>> realized;
  realized.insert({}); // empty coincidence set is always realized
  for (int i = 0; i < n; ++i) realized.insert({i});

  std::vector<std::array<int, 2>> crossing;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double g = mdot(hyp::cap_to_pole(caps[i]),
                            hyp::cap_to_pole(caps[j]));
      if (std::abs(g) <= 1.0 + tol) {
        realized.insert({i, j});
        crossing.push_back({i, j});
      }
    }
  }

  std::vector<Vec> probes;
  if (d == 2) {
    for (const auto& pr : crossing) {
      for (const Vec& q : pair_points_s2(caps[pr[0]], caps[pr[1]])) {
        probes.push_back(q);
      }
    }
  } else {
    std::set<std::array<int, 2>> cross_set(crossing.begin(), crossing.end());
    auto crosses = [&](int a, int b) {
      return cross_set.count({std::min(a, b), std::max(a, b)}) > 0;
    };
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (!crosses(i, j)) continue;
        for (int k = j + 1; k < n; ++k) {
          if (!crosses(i, k) || !crosses(j, k)) continue;
          Vec q;
          if (triple_point_highdim(caps, i, j, k, q)) probes.push_back(q);
        }
      }
    }
  }
  for (const Vec& q : probes) {
    std::vector<int> set = coincidence_set(caps, q, tol);
    if (static_cast<int>(set.size()) >= 4) {
      rep.unsupported = true;
      rep.passes = false;
    }
    if (static_cast<int>(set.size()) >= 3) realized.insert(set);
  }

  for (const auto& set : realized) {
    ConditionEntry e;
    e.indices = set;
    const auto k = static_cast<double>(set.size());
    e.lhs = set.empty() ? 0.0 : k * lhs1; // avoids 0 * inf
    e.rhs = (static_cast<double>(n) - k) * rhs1;
    e.ok = e.lhs < e.rhs;
    if (!e.ok) rep.passes = false;
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

bool check_disconnected(const std::vector<hyp::SphericalCap>& caps) {
  const int n = static_cast<int>(caps.size());
  if (n <= 1) return false;
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double g = mdot(hyp::cap_to_pole(caps[i]),
                            hyp::cap_to_pole(caps[j]));
      if (g > -1.0 + 1e-9) parent[find(i)] = find(j); // open caps overlap
    }
  }
  int roots = 0;
  for (int i = 0; i < n; ++i) roots += (find(i) == i) ? 1 : 0;
  return roots >= 2;
}

} // namespace koebe
