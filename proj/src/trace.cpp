// SPDX-License-Identifier: MIT
//
// Integral curves of the center fields. Integration runs in ball-chart
// coordinates with a classic embedded step-doubling RK4 controller; every
// accepted state is renormalized onto the hyperboloid by the chart inverse.

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <tuple>

#include "koebe/errors.hpp"
#include "koebe/solver.hpp"

namespace koebe {

namespace {

using hyp::HPoint;
using hyp::MinkowskiVec;

// Chart velocity of a tangent vector: differentiate b = x/(1+t) along
// (dx, dt) = (h_sp, h_t).
Vec chart_velocity(const HPoint& p, const MinkowskiVec& h) {
  const double w = 1.0 + p.v.time;
  return (h.spatial * w - p.v.spatial * h.time) / (w * w);
}

struct FieldOnCharts {
  std::function<FieldEval(const HPoint&)> eval;
  double sign = 1.0;

  // Velocity at chart point y; nullopt when y leaves the chart or domain.
  std::optional<Vec> operator()(const Vec& y) const {
    if (y.norm() >= 1.0 - 5e-3) return std::nullopt;
    HPoint p = hyp::ball_chart_inv(y);
    try {
      FieldEval ev = eval(p);
      return chart_velocity(p, ev.total.vec * sign);
    } catch (const geometry_error&) {
      return std::nullopt;
    }
  }
};

std::optional<Vec> rk4_step(const FieldOnCharts& f, const Vec& y, double dt) {
  auto k1 = f(y);
  if (!k1) return std::nullopt;
  auto k2 = f(y + 0.5 * dt * *k1);
  if (!k2) return std::nullopt;
  auto k3 = f(y + 0.5 * dt * *k2);
  if (!k3) return std::nullopt;
  auto k4 = f(y + dt * *k3);
  if (!k4) return std::nullopt;
  return y + (dt / 6.0) * (*k1 + 2.0 * *k2 + 2.0 * *k3 + *k4);
}

} // namespace

IntegralCurve trace_curve(const CapSystem& sys, const CenterSpec& spec,
                          const hyp::HPoint& p0, const TraceOptions& opts) {
  if (spec.kind == CenterKind::CC || spec.kind == CenterKind::IC) {
    throw not_supported_error(
        "min-max centers have no smooth field to trace");
  }
  const bool weighted = spec.kind == CenterKind::WeightedCaps;
  auto margin_ok = [&](const HPoint& p) {
    return weighted ? in_domain(sys.vertex_caps, p) : in_domain(sys, p);
  };
  if (!margin_ok(p0)) {
    throw geometry_error("trace start point is outside the domain");
  }

  FieldOnCharts f;
  f.sign = opts.forward ? 1.0 : -1.0;
  f.eval = [&sys, spec](const HPoint& p) { return lift_field(spec, sys, p); };

  IntegralCurve curve;
  Vec y = hyp::ball_chart(p0);
  HPoint p = p0;
  double arc = 0.0;
  curve.samples.emplace_back(arc, p);

  // Nearest plane, searched over the families the field depends on.
  auto classify = [&](const HPoint& q) {
    double best = std::numeric_limits<double>::infinity();
    EndpointClass cls = EndpointClass::Undetermined;
    int index = -1;
    for (std::size_t i = 0; i < sys.vertex_caps.size(); ++i) {
      double d = hyp::plane_distance(q, sys.vertex_pole(static_cast<int>(i)));
      if (d < best) {
        best = d;
        cls = EndpointClass::VertexPlane;
        index = static_cast<int>(i);
      }
    }
    if (!weighted) {
      for (std::size_t j = 0; j < sys.face_caps.size(); ++j) {
        double d = hyp::plane_distance(q, sys.face_pole(static_cast<int>(j)));
        if (d < best) {
          best = d;
          cls = EndpointClass::FacePlane;
          index = static_cast<int>(j);
        }
      }
    }
    return std::tuple<double, EndpointClass, int>(best, cls, index);
  };

  double dt = 1e-3;
  for (int step = 0; step < opts.max_steps; ++step) {
    // termination tests at the current point
    FieldEval ev = lift_field(spec, sys, p);
    if (ev.residual < opts.tol_residual) {
      curve.endpoint = EndpointClass::Zero;
      return curve;
    }
    auto [mind, cls, index] = classify(p);
    if (mind < opts.boundary_eps) {
      curve.endpoint = cls;
      curve.plane_index = index;
      return curve;
    }
    if (arc > opts.max_arc) break;

    // step-doubling RK4 with error-based step adaptation
    bool accepted = false;
    while (dt > 1e-14) {
      auto full = rk4_step(f, y, dt);
      auto half = rk4_step(f, y, 0.5 * dt);
      std::optional<Vec> two;
      if (half) two = rk4_step(f, *half, 0.5 * dt);
      if (!full || !two) {
        dt *= 0.5; // a stage left the domain: the boundary is close
        continue;
      }
      const double err = (*full - *two).norm() / 15.0;
      if (err <= opts.local_error) {
        Vec ynew = *two + (*two - *full) / 15.0;
        if (ynew.norm() < 1.0 - 5e-3) {
          HPoint pnew = hyp::ball_chart_inv(ynew);
          if (margin_ok(pnew)) {
            arc += hyp::distance(p, pnew);
            y = ynew;
            p = pnew;
            curve.samples.emplace_back(arc, p);
            accepted = true;
          }
        }
        if (!accepted) {
          dt *= 0.5;
          continue;
        }
        // grow the step when the error leaves room
        if (err < 0.1 * opts.local_error) dt = std::min(dt * 2.0, 0.5);
        break;
      }
      dt *= 0.5;
    }
    if (!accepted) {
      // integration cannot proceed: the flow is pressed against a plane
      auto [mind, cls, index] = classify(p);
      if (mind < 1e-3) {
        curve.endpoint = cls;
        curve.plane_index = index;
      }
      return curve;
    }
  }
  curve.endpoint = EndpointClass::Undetermined;
  return curve;
}

} // namespace koebe
