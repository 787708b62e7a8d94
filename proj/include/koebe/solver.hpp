// SPDX-License-Identifier: MIT
//
// Zero finders for the center fields. The primary solver runs damped Newton
// on the residual R(p) = g(moved system) over ball-chart coordinates, where
// "moved" applies the boost carrying p to the chart origin; a geodesic flow
// along the field serves as fallback and polish. Min-max centers (cc/ic) go
// through a derivative-free simplex search with a tie-equalizing polish.
// trace_curve integrates the field itself and classifies where flow lines
// end.

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "koebe/fields.hpp"

namespace koebe {

enum class SolveStatus {
  Converged,         // residual at or below tol_residual
  MaxIter,           // iteration budget exhausted without convergence
  BoundaryEscape,    // iterates pinned against the domain boundary
  ConditionViolated, // weighted-caps hypothesis checks failed
  NotSupported,      // spec/combinatorics mismatch or unsupported request
};

std::string to_string(SolveStatus s);

enum class SolveMethod { Auto, Newton, Flow };

struct SolveOptions {
  double tol_residual = 1e-8;
  double tol_step = 1e-12;
  int max_iter = 200;
  SolveMethod method = SolveMethod::Auto;
  double boundary_margin = 1e-6; // iterates keep min plane distance above it
  std::uint64_t seed = 0;        // nonzero: random in-domain start point
};

struct SolveReport {
  SolveStatus status = SolveStatus::MaxIter;
  // The located point (field zero / optimum) and the boost carrying it to
  // the chart origin: the centering transformation.
  hyp::HPoint p = hyp::HPoint::origin(2);
  hyp::LorentzMap transform = hyp::LorentzMap::identity(2);
  std::vector<double> residual_history;
  int iterations = 0;
  double wall_seconds = 0.0;
  std::string message;

  double residual() const {
    return residual_history.empty() ? 0.0 : residual_history.back();
  }
};

// Finds p with the spec's center of the moved system at the origin.
// Dispatches cc/ic to solve_minimax; weighted-caps specs run the hypothesis
// checks first and report ConditionViolated with the failing set when they
// do not hold. CM3 is experimental: it may stop at MaxIter, but a Converged
// status always certifies residual <= tol_residual. Throws geometry_error
// when the system does not validate.
SolveReport solve(const CapSystem& sys, const CenterSpec& spec,
                  const SolveOptions& opts = {});

enum class PlaneFamily { VertexPlanes, FacePlanes };

// Maximizes the minimum plane distance over the chosen family (the
// circumscribed-/inscribed-ball centers). Converged means the tie
// certificate of the moved system passes; the recorded residual is the
// certificate's hull distance.
SolveReport solve_minimax(const CapSystem& sys, PlaneFamily family,
                          const SolveOptions& opts = {});

// Centers a bare cap collection on S^d under a weight family: finds p with
// sum w(radius') center' = 0 after moving p to the origin. Hypothesis
// checks as in solve.
SolveReport solve_weighted(const std::vector<hyp::SphericalCap>& caps,
                           WeightFamily family, double power = 2.0,
                           const SolveOptions& opts = {});

// ---------------------------------------------------------------------------
// Integral curves

enum class EndpointClass { Zero, VertexPlane, FacePlane, Undetermined };

std::string to_string(EndpointClass c);

struct TraceOptions {
  bool forward = true;        // +field: the descent / zero-seeking direction
  double local_error = 1e-8;  // per-step error target (step doubling)
  double tol_residual = 1e-8; // field norm that counts as reaching a zero
  double boundary_eps = 1e-6; // plane distance that counts as hitting it
  int max_steps = 4000;
  double max_arc = 50.0;      // arc-length cap (hyperbolic)
};

struct IntegralCurve {
  std::vector<std::pair<double, hyp::HPoint>> samples; // (arc length, point)
  EndpointClass endpoint = EndpointClass::Undetermined;
  int plane_index = -1; // which vertex/face plane, when applicable
};

// Adaptive 4th-order integration of the spec's field from p0, in ball-chart
// coordinates with per-step renormalization onto the hyperboloid. Forward
// integration descends the associated potential; it converges to the field
// zero from its basin and falls into a boundary plane otherwise.
IntegralCurve trace_curve(const CapSystem& sys, const CenterSpec& spec,
                          const hyp::HPoint& p0, const TraceOptions& opts = {});

} // namespace koebe
