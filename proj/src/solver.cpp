// SPDX-License-Identifier: MIT

#include "koebe/solver.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <optional>

#include <Eigen/Dense>

#include "koebe/errors.hpp"

namespace koebe {

namespace {

using hyp::HPoint;
using hyp::TangentVec;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// A zero-finding problem over ball-chart coordinates: vector residual to
// drive to zero, optional intrinsic field for flow steps, and the domain
// margin that guards every accepted iterate.
struct Problem {
  std::function<Vec(const HPoint&)> residual;
  std::function<TangentVec(const HPoint&)> field; // empty: Newton only
  std::function<double(const HPoint&)> margin;
  int ball_dim = 3;
};

Vec seeded_start(const Problem& pb, std::uint64_t seed) {
  if (seed == 0) return Vec::Zero(pb.ball_dim);
  hyp::Rng rng(seed);
  // The fields carry satellite zeros on symmetry orbits surprisingly close
  // to the principal one, so randomized starts stay modest: they probe the
  // principal basin, not the whole domain.
  for (double scale = 0.2; scale > 1e-4; scale *= 0.7) {
    for (int attempt = 0; attempt < 8; ++attempt) {
      Vec y = scale * rng.uniform() * rng.unit_vector(pb.ball_dim);
      if (pb.margin(hyp::ball_chart_inv(y)) > 1e-4) return y;
    }
  }
  return Vec::Zero(pb.ball_dim);
}

SolveReport run_solver(const Problem& pb, const SolveOptions& opts) {
  const auto t0 = Clock::now();
  SolveReport rep;

  // Residual evaluation that refuses boundary-hugging or out-of-chart
  // points; Newton and flow steps are only accepted through it. The chart
  // radius stays clear of 1 because ball_chart_inv loses the hyperboloid
  // normalization there.
  auto safe_residual = [&](const Vec& y, Vec& out) {
    if (y.norm() >= 1.0 - 5e-3) return false;
    HPoint p = hyp::ball_chart_inv(y);
    if (!(pb.margin(p) > opts.boundary_margin)) return false;
    try {
      out = pb.residual(p);
    } catch (const geometry_error&) {
      return false;
    }
    return true;
  };

  Vec y = seeded_start(pb, opts.seed);
  Vec r;
  if (!safe_residual(y, r)) {
    y = Vec::Zero(pb.ball_dim);
    if (!safe_residual(y, r)) {
      rep.status = SolveStatus::BoundaryEscape;
      rep.message = "no interior start point";
      rep.wall_seconds = seconds_since(t0);
      return rep;
    }
  }
  double rn = r.norm();
  rep.residual_history.push_back(rn);

  const bool allow_newton = opts.method != SolveMethod::Flow;
  const bool allow_flow =
      opts.method != SolveMethod::Newton && static_cast<bool>(pb.field);
  const double fd = 1e-6; // central-difference step for the Jacobian

  int it = 0;
  bool stagnated = false;
  while (it < opts.max_iter && rn > opts.tol_residual) {
    bool progressed = false;

    if (allow_newton) {
      Eigen::MatrixXd jac(r.size(), pb.ball_dim);
      bool jac_ok = true;
      for (int k = 0; k < pb.ball_dim && jac_ok; ++k) {
        Vec yp = y, ym = y;
        yp(k) += fd;
        ym(k) -= fd;
        Vec rp, rm;
        const bool bp = safe_residual(yp, rp);
        const bool bm = safe_residual(ym, rm);
        if (bp && bm) {
          jac.col(k) = (rp - rm) / (2.0 * fd);
        } else if (bp) {
          jac.col(k) = (rp - r) / fd;
        } else if (bm) {
          jac.col(k) = (r - rm) / fd;
        } else {
          jac_ok = false;
        }
      }
      if (jac_ok) {
        Vec dy = jac.completeOrthogonalDecomposition().solve(-r);
        // Trust region: cap the chart step so iterates stay inside the basin
        // they started in instead of leaping across the domain.
        if (dy.norm() > 0.25) dy *= 0.25 / dy.norm();
        for (double alpha = 1.0; alpha * dy.norm() > opts.tol_step;
             alpha *= 0.5) {
          Vec yt = y + alpha * dy;
          Vec rt;
          if (safe_residual(yt, rt) && rt.norm() < rn) {
            y = yt;
            r = rt;
            rn = rt.norm();
            progressed = true;
            break;
          }
        }
      }
    }

    if (!progressed && allow_flow) {
      // Geodesic step along the field line, length adapted to the residual.
      // The fields are not gradients: a zero can attract the flow in either
      // time direction (or be a saddle), so both orientations are tried and
      // whichever lowers the residual is kept.
      HPoint p = hyp::ball_chart_inv(y);
      TangentVec h = pb.field(p);
      const double hn = h.norm();
      if (hn > 1e-300) {
        TangentVec dir = h.normalized();
        // Sufficient decrease, not first decrease: a half-step that merely
        // reflects through the zero shaves a fraction of a percent off the
        // residual and would be accepted greedily, ping-ponging forever.
        // Keep halving while a 10% cut is not reached, remembering the best
        // strictly-decreasing step as a fallback.
        double best_gamma = 0.0, best_sign = 1.0, best_rn = rn;
        for (double gamma = std::min(0.25, rn / std::max(1.0, hn));
             gamma > opts.tol_step && !progressed; gamma *= 0.5) {
          for (double sign : {1.0, -1.0}) {
            HPoint q = hyp::geodesic_exp(dir, sign * gamma);
            Vec yq = hyp::ball_chart(q);
            Vec rq;
            if (!safe_residual(yq, rq)) continue;
            if (rq.norm() < best_rn) {
              best_gamma = gamma;
              best_sign = sign;
              best_rn = rq.norm();
            }
            if (rq.norm() < 0.9 * rn) {
              progressed = true;
              break;
            }
          }
        }
        if (best_gamma > 0.0) {
          HPoint q = hyp::geodesic_exp(dir, best_sign * best_gamma);
          Vec yq = hyp::ball_chart(q);
          Vec rq;
          if (safe_residual(yq, rq) && rq.norm() < rn) {
            y = yq;
            r = rq;
            rn = rq.norm();
            progressed = true;
          } else {
            progressed = false;
          }
        }
      }
    }

    ++it;
    rep.residual_history.push_back(rn);
    if (!progressed) {
      stagnated = true;
      break;
    }
  }

  rep.p = hyp::ball_chart_inv(y);
  rep.transform = hyp::boost_to_origin(rep.p);
  rep.iterations = it;
  rep.wall_seconds = seconds_since(t0);
  if (rn <= opts.tol_residual) {
    rep.status = SolveStatus::Converged;
  } else if (stagnated && pb.margin(rep.p) <= 2.0 * opts.boundary_margin) {
    rep.status = SolveStatus::BoundaryEscape;
    rep.message = "iterates pinned against the domain boundary";
  } else {
    rep.status = SolveStatus::MaxIter;
    rep.message = stagnated ? "step size underflow before reaching tolerance"
                            : "iteration budget exhausted";
  }
  return rep;
}

Vec weighted_center_sum(const std::vector<hyp::SphericalCap>& caps,
                        WeightFamily family, double power) {
  auto weight = [&](double radius) {
    switch (family) {
    case WeightFamily::Sec:
      return 1.0 / std::cos(radius);
    case WeightFamily::Tan:
      return std::tan(radius);
    case WeightFamily::PowSec:
      return std::pow(1.0 / std::cos(radius), power);
    }
    throw not_supported_error("unknown weight family");
  };
  Vec sum = Vec::Zero(caps.front().center.size());
  for (const auto& cap : caps) sum += weight(cap.radius) * cap.center;
  return sum;
}

std::optional<SolveReport> weighted_hypotheses(
    const std::vector<hyp::SphericalCap>& caps, WeightFamily family,
    double power) {
  ConditionReport cond = check_condition(caps, family, power);
  if (!cond.passes || cond.unsupported) {
    SolveReport rep;
    rep.status = SolveStatus::ConditionViolated;
    rep.message = cond.summary();
    return rep;
  }
  if (!check_disconnected(caps)) {
    SolveReport rep;
    rep.status = SolveStatus::ConditionViolated;
    rep.message = "cap interiors form a single connected region";
    return rep;
  }
  return std::nullopt;
}

} // namespace

std::string to_string(SolveStatus s) {
  switch (s) {
  case SolveStatus::Converged:
    return "Converged";
  case SolveStatus::MaxIter:
    return "MaxIter";
  case SolveStatus::BoundaryEscape:
    return "BoundaryEscape";
  case SolveStatus::ConditionViolated:
    return "ConditionViolated";
  case SolveStatus::NotSupported:
    return "NotSupported";
  }
  return "Unknown";
}

std::string to_string(EndpointClass c) {
  switch (c) {
  case EndpointClass::Zero:
    return "Zero";
  case EndpointClass::VertexPlane:
    return "VertexPlane";
  case EndpointClass::FacePlane:
    return "FacePlane";
  case EndpointClass::Undetermined:
    return "Undetermined";
  }
  return "Unknown";
}

SolveReport solve(const CapSystem& sys, const CenterSpec& spec,
                  const SolveOptions& opts) {
  ValidationReport val = validate(sys);
  if (!val.ok) {
    throw geometry_error("system does not validate: " +
                         (val.problems.empty() ? std::string("unknown")
                                               : val.problems.front()));
  }

  if (spec.kind == CenterKind::CC) {
    return solve_minimax(sys, PlaneFamily::VertexPlanes, opts);
  }
  if (spec.kind == CenterKind::IC) {
    return solve_minimax(sys, PlaneFamily::FacePlanes, opts);
  }
  if (spec.needs_simplicial() && !sys.combo.simplicial()) {
    SolveReport rep;
    rep.status = SolveStatus::NotSupported;
    rep.message = spec.name() + " requires triangular faces";
    return rep;
  }
  if (spec.kind == CenterKind::WeightedCaps) {
    if (auto bad = weighted_hypotheses(sys.vertex_caps, spec.family,
                                       spec.power)) {
      return *bad;
    }
    return solve_weighted(sys.vertex_caps, spec.family, spec.power, opts);
  }

  Problem pb;
  pb.ball_dim = sys.sphere_dim() + 1;
  pb.residual = [&sys, spec](const HPoint& p) {
    CapSystem moved = apply_mobius(hyp::boost_to_origin(p), sys);
    return Vec(evaluate_center(moved, spec).point);
  };
  pb.field = [&sys, spec](const HPoint& p) {
    return lift_field(spec, sys, p).total;
  };
  pb.margin = [&sys](const HPoint& p) { return domain_margin(sys, p); };
  return run_solver(pb, opts);
}

SolveReport solve_weighted(const std::vector<hyp::SphericalCap>& caps,
                           WeightFamily family, double power,
                           const SolveOptions& opts) {
  if (caps.empty()) throw geometry_error("no caps to center");
  if (auto bad = weighted_hypotheses(caps, family, power)) return *bad;

  Problem pb;
  pb.ball_dim = caps.front().sphere_dim() + 1;
  pb.residual = [&caps, family, power](const HPoint& p) {
    hyp::LorentzMap boost = hyp::boost_to_origin(p);
    std::vector<hyp::SphericalCap> moved;
    moved.reserve(caps.size());
    for (const auto& cap : caps) moved.push_back(hyp::apply_cap(boost, cap));
    return weighted_center_sum(moved, family, power);
  };
  pb.field = [&caps, family, power](const HPoint& p) {
    return weighted_cap_field(p, caps, family, power).total;
  };
  pb.margin = [&caps](const HPoint& p) { return domain_margin(caps, p); };
  return run_solver(pb, opts);
}

} // namespace koebe
