// SPDX-License-Identifier: MIT
//
// Min-max plane-distance solver. The min of the plane distances is a
// concave-like landscape near the tie point we want, but it is unbounded
// along the ideal ends of the domain (far from every plane all distances
// grow together), so a global ascent would escape. The solver therefore
// works through certified candidates: the tie point either sits at the
// common-perpendicular midpoint of two disjoint planes (the pair whose
// equal-distance tubes touch first) or is a refinement of one involving
// more tied planes. Each candidate is refined by a trust-region
// Nelder-Mead pass plus a subgradient/equalization polish, and accepted
// only when the tie certificate closes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numeric>
#include <limits>
#include <optional>

#include <Eigen/Dense>

#include "koebe/errors.hpp"
#include "koebe/solver.hpp"

namespace koebe {

namespace {

using hyp::HPoint;

using Clock = std::chrono::steady_clock;

// ball_chart_inv loses the quadratic-form normalization when |y| -> 1
// (coordinates grow like 1/(1-|y|^2) and their squares round past the
// hyperboloid check), so keep evaluations inside this radius; hyperbolic
// distance ~6 from the origin is far beyond any tie point of a
// representable system.
constexpr double kChartSafe = 1.0 - 5e-3;

struct MinimaxObjective {
  std::vector<hyp::MinkowskiVec> poles;
  int ball_dim = 3;

  std::vector<double> distances(const Vec& y) const {
    Vec yc = y;
    if (yc.norm() > kChartSafe) yc *= kChartSafe / yc.norm();
    HPoint p = hyp::ball_chart_inv(yc);
    std::vector<double> d(poles.size());
    for (std::size_t i = 0; i < poles.size(); ++i) {
      d[i] = hyp::plane_distance(p, poles[i]);
    }
    return d;
  }

  double phi(const Vec& y) const {
    if (y.norm() > kChartSafe) return -1e9 * (1.0 + y.norm());
    auto d = distances(y);
    return *std::min_element(d.begin(), d.end());
  }
};

using Objective = std::function<double(const Vec&)>;

// Standard Nelder-Mead. Returns the best vertex.
Vec nelder_mead(const Objective& f, Vec y0, int ball_dim, int max_eval,
                double spread) {
  const int n = ball_dim;

  std::vector<Vec> xs;
  std::vector<double> fs;
  xs.push_back(y0);
  for (int k = 0; k < n; ++k) {
    Vec y = y0;
    y(k) += spread;
    if (y.norm() >= 0.98) y(k) -= 2.0 * spread;
    xs.push_back(y);
  }
  for (const auto& x : xs) fs.push_back(f(x));
  int evals = static_cast<int>(xs.size());

  auto order = [&]() {
    std::vector<int> idx(xs.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](int a, int b) { return fs[a] < fs[b]; });
    std::vector<Vec> x2;
    std::vector<double> f2;
    x2.reserve(xs.size());
    f2.reserve(xs.size());
    for (int i : idx) {
      x2.push_back(xs[i]);
      f2.push_back(fs[i]);
    }
    xs.swap(x2);
    fs.swap(f2);
  };

  while (evals < max_eval) {
    order();
    double diam = 0.0;
    for (std::size_t i = 1; i < xs.size(); ++i) {
      diam = std::max(diam, (xs[i] - xs[0]).norm());
    }
    if (diam < 1e-10) break;

    Vec centroid = Vec::Zero(n);
    for (int i = 0; i < n; ++i) centroid += xs[i];
    centroid /= n;

    const Vec& worst = xs[n];
    Vec xr = centroid + (centroid - worst);
    double fr = f(xr);
    ++evals;
    if (fr < fs[0]) {
      Vec xe = centroid + 2.0 * (centroid - worst);
      double fe = f(xe);
      ++evals;
      if (fe < fr) {
        xs[n] = xe;
        fs[n] = fe;
      } else {
        xs[n] = xr;
        fs[n] = fr;
      }
    } else if (fr < fs[n - 1]) {
      xs[n] = xr;
      fs[n] = fr;
    } else {
      Vec xc = centroid + 0.5 * ((fr < fs[n] ? xr : worst) - centroid);
      double fc = f(xc);
      ++evals;
      if (fc < std::min(fr, fs[n])) {
        xs[n] = xc;
        fs[n] = fc;
      } else {
        for (int i = 1; i <= n; ++i) {
          xs[i] = xs[0] + 0.5 * (xs[i] - xs[0]);
          fs[i] = f(xs[i]);
        }
        evals += n;
      }
    }
  }
  order();
  return xs[0];
}

Vec fd_gradient(const MinimaxObjective& obj, const Vec& y, int i) {
  const double h = 1e-6;
  Vec g(obj.ball_dim);
  for (int k = 0; k < obj.ball_dim; ++k) {
    Vec yp = y, ym = y;
    yp(k) += h;
    ym(k) -= h;
    g(k) = (obj.distances(yp)[i] - obj.distances(ym)[i]) / (2.0 * h);
  }
  return g;
}

// Subgradient polish: while the min-norm element s of the active gradients'
// hull is significantly nonzero, step along s (the steepest-ascent
// direction of the min); once s vanishes the active set is optimal and a
// least-squares step equalizes the tied distances exactly.
int polish(const MinimaxObjective& obj, Vec& y) {
  int steps = 0;
  for (; steps < 80; ++steps) {
    auto d = obj.distances(y);
    const double dmin = *std::min_element(d.begin(), d.end());
    std::vector<int> active;
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (d[i] <= dmin + 1e-6) active.push_back(static_cast<int>(i));
    }
    std::vector<Vec> grads;
    grads.reserve(active.size());
    for (int i : active) grads.push_back(fd_gradient(obj, y, i));

    Vec s = min_norm_point(grads);
    if (s.norm() > 1e-10) {
      bool improved = false;
      for (double t = 0.5; t > 1e-14; t *= 0.5) {
        Vec yt = y + t * s;
        if (yt.norm() > kChartSafe) continue;
        if (obj.phi(yt) > dmin) {
          y = yt;
          improved = true;
          break;
        }
      }
      if (!improved) break;
      continue;
    }

    // Equalize ties: drive d_i - mean(d_active) to zero.
    const auto m = static_cast<int>(active.size());
    if (m < 2) break;
    Eigen::VectorXd r(m);
    Eigen::MatrixXd jac(m, obj.ball_dim);
    double mean = 0.0;
    for (int a = 0; a < m; ++a) mean += d[active[a]];
    mean /= m;
    Vec gm = Vec::Zero(obj.ball_dim);
    for (int a = 0; a < m; ++a) gm += grads[a];
    gm /= m;
    double rmax = 0.0;
    for (int a = 0; a < m; ++a) {
      r(a) = d[active[a]] - mean;
      rmax = std::max(rmax, std::abs(r(a)));
      jac.row(a) = (grads[a] - gm).transpose();
    }
    if (rmax < 1e-13) break;
    Vec dy = jac.completeOrthogonalDecomposition().solve(-r);
    if (dy.norm() < 1e-14) break;
    // A nearly singular system can propose an arbitrarily large step;
    // accept only chart-interior points that shrink the tie residual.
    bool improved = false;
    for (double t = 1.0; t > 1e-6; t *= 0.5) {
      Vec yt = y + t * dy;
      if (yt.norm() > kChartSafe) continue;
      auto dt2 = obj.distances(yt);
      double mt = 0.0;
      for (int a = 0; a < m; ++a) mt += dt2[active[a]];
      mt /= m;
      double rt = 0.0;
      for (int a = 0; a < m; ++a) {
        rt = std::max(rt, std::abs(dt2[active[a]] - mt));
      }
      if (rt < rmax) {
        y = yt;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  return steps;
}

// Equal-distance points of disjoint plane pairs, nearest pair first. The
// midpoint of the common perpendicular of planes with pole product g < -1
// is the normalized sum of the poles and realizes distance
// asinh(sqrt((-g-1)/2)) to both; the tie point of the whole family either
// is such a midpoint or improves on the nearest one.
std::vector<Vec> pair_candidates(const std::vector<hyp::MinkowskiVec>& poles) {
  std::vector<std::pair<double, Vec>> mids;
  for (std::size_t i = 0; i < poles.size(); ++i) {
    for (std::size_t j = i + 1; j < poles.size(); ++j) {
      const double g = hyp::mdot(poles[i], poles[j]);
      if (g >= -1.0 - 1e-9) continue; // crossing or tangent planes
      hyp::MinkowskiVec u = poles[i] + poles[j];
      const double q = -hyp::mdot(u, u); // 2(-1-g) > 0
      hyp::MinkowskiVec m = u * (1.0 / std::sqrt(q));
      if (m.time < 0.0) m = m * -1.0;
      Vec y = m.spatial / (1.0 + m.time);
      if (y.norm() > kChartSafe) continue;
      mids.emplace_back(std::asinh(std::sqrt((-g - 1.0) / 2.0)), y);
    }
  }
  std::sort(mids.begin(), mids.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Vec> out;
  out.reserve(mids.size());
  for (auto& [tau, y] : mids) out.push_back(std::move(y));
  return out;
}

// Least-squares equal-product point: solves <q, s_i> = -1 for all poles at
// once and projects onto the hyperboloid. When the family admits a point
// equidistant from every plane (for example the four faces of a tetrahedron,
// which are pairwise tangent and yield no disjoint-pair midpoints), this is
// that point up to scaling; otherwise it is a serviceable interior start.
std::optional<Vec> equalizer_candidate(
    const std::vector<hyp::MinkowskiVec>& poles, int ball_dim) {
  const int n = static_cast<int>(poles.size());
  Mat a(n, ball_dim + 1);
  for (int i = 0; i < n; ++i) {
    a.row(i).head(ball_dim) = poles[i].spatial.transpose();
    a(i, ball_dim) = -poles[i].time;
  }
  Vec rhs = -Vec::Ones(n);
  Vec q = a.completeOrthogonalDecomposition().solve(rhs);
  hyp::MinkowskiVec qm{q.head(ball_dim), q(ball_dim)};
  const double norm2 = -hyp::mdot(qm, qm);
  if (norm2 < 1e-12) return std::nullopt; // not time-like: no interior point
  qm = qm * (1.0 / std::sqrt(norm2));
  if (qm.time < 0.0) qm = qm * -1.0;
  Vec y = qm.spatial / (1.0 + qm.time);
  if (y.norm() > kChartSafe) return std::nullopt;
  return y;
}

} // namespace

SolveReport solve_minimax(const CapSystem& sys, PlaneFamily family,
                          const SolveOptions& opts) {
  const auto t0 = Clock::now();
  ValidationReport val = validate(sys);
  if (!val.ok) {
    throw geometry_error("system does not validate: " +
                         (val.problems.empty() ? std::string("unknown")
                                               : val.problems.front()));
  }

  MinimaxObjective obj;
  obj.ball_dim = sys.sphere_dim() + 1;
  const auto& caps = (family == PlaneFamily::VertexPlanes) ? sys.vertex_caps
                                                           : sys.face_caps;
  obj.poles.reserve(caps.size());
  for (const auto& cap : caps) obj.poles.push_back(hyp::cap_to_pole(cap));

  std::vector<Vec> starts;
  starts.push_back(Vec::Zero(obj.ball_dim));
  if (opts.seed != 0) {
    hyp::Rng rng(opts.seed);
    starts.push_back((0.3 * rng.uniform()) * rng.unit_vector(obj.ball_dim));
  }
  if (auto eq = equalizer_candidate(obj.poles, obj.ball_dim)) {
    starts.push_back(*eq);
  }
  std::vector<Vec> mids = pair_candidates(obj.poles);
  for (std::size_t k = 0; k < mids.size() && k < 12; ++k) {
    starts.push_back(mids[k]);
  }

  auto finish = [&](SolveReport rep) {
    rep.wall_seconds =
        std::chrono::duration<double>(Clock::now() - t0).count();
    return rep;
  };

  std::optional<SolveReport> best;
  for (const Vec& y0 : starts) {
    // Soft trust region: −phi is bounded below on the chart (≈ −10), so a
    // strong quadratic penalty beyond radius 0.6 of the start prevents the
    // simplex from drifting toward the ideal ends of the domain where all
    // distances grow without bound.
    Objective f = [&obj, &y0](const Vec& y) {
      const double excess = std::max(0.0, (y - y0).norm() - 0.6);
      return -obj.phi(y) + 1e6 * excess * excess;
    };
    Vec y = nelder_mead(f, y0, obj.ball_dim, 40 * opts.max_iter, 0.12);
    const int polish_steps = polish(obj, y);

    SolveReport rep;
    rep.p = hyp::ball_chart_inv(y);
    rep.transform = hyp::boost_to_origin(rep.p);
    rep.iterations = polish_steps;
    CapSystem moved;
    try {
      moved = apply_mobius(rep.transform, sys);
    } catch (const geometry_error&) {
      // The candidate escaped the domain far enough that a moved cap
      // reaches a hemisphere; it cannot certify, try the next one.
      continue;
    }
    CenterCertificate cert = (family == PlaneFamily::VertexPlanes)
                                 ? cc_certificate(moved)
                                 : ic_certificate(moved);
    rep.residual_history.push_back(
        std::max(cert.hull_distance, cert.ball_center_norm));
    if (cert.passes && cert.ball_check) {
      rep.status = SolveStatus::Converged;
      rep.message = std::to_string(cert.tied.size()) + " tied planes";
      return finish(std::move(rep));
    }
    rep.status = SolveStatus::MaxIter;
    rep.message = "tie certificate did not close";
    if (!best || rep.residual() < best->residual()) best = std::move(rep);
  }
  if (!best) {
    SolveReport rep;
    rep.status = SolveStatus::BoundaryEscape;
    rep.message = "every candidate escaped the domain";
    rep.residual_history.push_back(std::numeric_limits<double>::infinity());
    return finish(std::move(rep));
  }
  return finish(std::move(*best));
}

} // namespace koebe
