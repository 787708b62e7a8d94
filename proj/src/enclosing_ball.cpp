// SPDX-License-Identifier: MIT
//
// Smallest enclosing ball (Welzl), nearest point of a convex hull to the
// origin (Wolfe's min-norm-point scheme), and the minimax optimality
// certificates built on them.

#include <algorithm>
#include <cmath>
#include <limits>

#include "koebe/centers.hpp"

namespace koebe {

namespace {

// Smallest ball with every support point on its boundary. The center is the
// min-norm least-squares solution relative to s0, which automatically lands
// in the affine hull of the support (row space), so coplanar cocircular
// quadruples get the flat center rather than an arbitrary one.
Ball circumball(const std::vector<Vec>& support) {
  Ball b;
  if (support.empty()) {
    b.center = Vec::Zero(3);
    b.radius = -1.0; // contains nothing
    return b;
  }
  const int k = static_cast<int>(support.size());
  Mat a(k - 1, 3);
  Vec rhs(k - 1);
  for (int i = 1; i < k; ++i) {
    const Vec d = support[i] - support[0];
    a.row(i - 1) = 2.0 * d.transpose();
    rhs(i - 1) = d.squaredNorm();
  }
  Vec y = Vec::Zero(3);
  if (k > 1)
    y = a.completeOrthogonalDecomposition().solve(rhs);
  b.center = support[0] + y;
  b.radius = 0.0;
  for (const Vec& p : support)
    b.radius = std::max(b.radius, (p - b.center).norm());
  return b;
}

bool inside(const Ball& b, const Vec& p) {
  return (p - b.center).norm() <= b.radius + 1e-12 * std::max(1.0, b.radius);
}

Ball welzl(std::vector<const Vec*>& pts, size_t n, std::vector<Vec>& support) {
  if (n == 0 || support.size() == 4) return circumball(support);
  Ball b = welzl(pts, n - 1, support);
  const Vec& p = *pts[n - 1];
  if (b.radius >= 0.0 && inside(b, p)) return b;
  support.push_back(p);
  b = welzl(pts, n - 1, support);
  support.pop_back();
  // Move-to-front keeps boundary points early, which keeps the recursion
  // shallow on adversarial orderings.
  std::rotate(pts.begin(), pts.begin() + (n - 1), pts.begin() + n);
  return b;
}

} // namespace

Ball smallest_enclosing_ball(const std::vector<Vec>& points) {
  if (points.empty()) throw geometry_error("enclosing ball needs points");
  std::vector<const Vec*> ptrs;
  ptrs.reserve(points.size());
  for (const Vec& p : points) ptrs.push_back(&p);
  // Deterministic shuffle for the expected-linear-time behavior.
  hyp::Rng rng(0x5eb);
  for (size_t i = ptrs.size(); i > 1; --i)
    std::swap(ptrs[i - 1], ptrs[rng.below(static_cast<int>(i))]);
  std::vector<Vec> support;
  return welzl(ptrs, ptrs.size(), support);
}

// --- min-norm point ----------------------------------------------------------

namespace {

// Minimum-norm point of the affine hull of the chosen points: solves the
// KKT system of  min |sum mu_s p_s|^2  s.t.  sum mu_s = 1.
Vec affine_weights(const std::vector<Vec>& pts, const std::vector<int>& id) {
  const int k = static_cast<int>(id.size());
  Mat kkt = Mat::Zero(k + 1, k + 1);
  Vec rhs = Vec::Zero(k + 1);
  for (int r = 0; r < k; ++r) {
    for (int s = 0; s < k; ++s) kkt(r, s) = pts[id[r]].dot(pts[id[s]]);
    kkt(r, k) = kkt(k, r) = 1.0;
  }
  rhs(k) = 1.0;
  return kkt.fullPivLu().solve(rhs).head(k);
}

} // namespace

Vec min_norm_point(const std::vector<Vec>& points) {
  if (points.empty()) throw geometry_error("min_norm_point needs points");
  const int n = static_cast<int>(points.size());

  int start = 0;
  for (int i = 1; i < n; ++i)
    if (points[i].squaredNorm() < points[start].squaredNorm()) start = i;

  std::vector<int> corral{start};
  std::vector<double> lam{1.0};
  Vec x = points[start];

  for (int outer = 0; outer < 16 * n + 64; ++outer) {
    // Linear oracle: most-decreasing vertex.
    int q = 0;
    double best = x.dot(points[0]);
    for (int i = 1; i < n; ++i) {
      const double v = x.dot(points[i]);
      if (v < best) best = v, q = i;
    }
    if (x.squaredNorm() - best <= 1e-14 * std::max(1.0, x.squaredNorm()))
      break; // x already minimal over the hull
    if (std::find(corral.begin(), corral.end(), q) != corral.end()) break;

    corral.push_back(q);
    lam.push_back(0.0);

    // Project onto the affine hull of the corral; walk back toward the
    // previous feasible point whenever a weight would go negative, dropping
    // the vertex that hits zero.
    while (true) {
      const Vec mu = affine_weights(points, corral);
      if (!mu.allFinite()) { corral.pop_back(); lam.pop_back(); break; }
      double theta = 1.0;
      for (size_t i = 0; i < corral.size(); ++i)
        if (mu(i) < 1e-12 && lam[i] > mu(i))
          theta = std::min(theta, lam[i] / (lam[i] - mu(i)));
      for (size_t i = 0; i < corral.size(); ++i)
        lam[i] += theta * (mu(i) - lam[i]);
      if (theta >= 1.0) break;
      for (size_t i = corral.size(); i-- > 0;)
        if (lam[i] <= 1e-12 && corral.size() > 1) {
          corral.erase(corral.begin() + i);
          lam.erase(lam.begin() + i);
        }
    }
    x = Vec::Zero(points[0].size());
    for (size_t i = 0; i < corral.size(); ++i) x += lam[i] * points[corral[i]];
  }
  return x;
}

// --- certificates -----------------------------------------------------------

namespace {

CenterCertificate certificate(const std::vector<hyp::SphericalCap>& caps,
                              double tol) {
  CenterCertificate cert;
  for (const auto& cap : caps)
    cert.max_radius = std::max(cert.max_radius, cap.radius);
  for (int i = 0; i < static_cast<int>(caps.size()); ++i)
    if (cert.max_radius - caps[i].radius <= 1e-9 * cert.max_radius)
      cert.tied.push_back(i);

  std::vector<Vec> pts;
  for (int i : cert.tied) pts.push_back(caps[i].center);
  cert.hull_distance = min_norm_point(pts).norm();
  cert.passes = cert.hull_distance <= tol;
  return cert;
}

} // namespace

CenterCertificate cc_certificate(const CapSystem& sys, double tol) {
  CenterCertificate cert = certificate(sys.vertex_caps, tol);
  std::vector<Vec> verts;
  for (const auto& cap : sys.vertex_caps)
    verts.push_back(cap.center / std::cos(cap.radius));
  cert.vertex_ball = smallest_enclosing_ball(verts);
  cert.ball_center_norm = cert.vertex_ball.center.norm();
  cert.ball_check = cert.ball_center_norm <= tol;
  return cert;
}

CenterCertificate ic_certificate(const CapSystem& sys, double tol) {
  CenterCertificate cert = certificate(sys.face_caps, tol);
  cert.ball_check = true; // the enclosing-ball cross-check is vertex-side only
  return cert;
}

} // namespace koebe
