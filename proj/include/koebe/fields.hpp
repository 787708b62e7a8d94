// SPDX-License-Identifier: MIT
//
// Intrinsic hyperbolic vector fields attached to center functionals. The
// generic construction replaces each cap radius by the intrinsic angle
// arccos(tanh d(p)) of its plane as seen from p, evaluates the functional's
// coefficients there, and attaches them to the unit normals toward the
// planes. A zero of the field at p means the isometry carrying p to the
// chart origin centers the corresponding functional.
//
// The verbatim field routines re-derive the same vectors through an
// independent algebraic route (hyperbolic functions of the plane distances
// instead of intrinsic angles) and exist as cross-checks.

#pragma once

#include <string>
#include <vector>

#include "koebe/centers.hpp"

namespace koebe {

struct FieldTerm {
  std::string key;          // "v3", "f1", "e5", "f2:v0", "c4"
  hyp::MinkowskiVec vec;    // tangent contribution at the base point
  double coefficient = 0.0; // scalar weight attached to the unit normal
};

struct FieldEval {
  hyp::HPoint base;
  hyp::TangentVec total;
  double residual = 0.0;        // Minkowski norm of total
  double min_coefficient = 0.0; // smallest scalar weight encountered
  std::vector<FieldTerm> terms;
};

// Common exterior region: every cap plane strictly on the far side.
bool in_domain(const CapSystem& sys, const hyp::HPoint& p);
bool in_domain(const std::vector<hyp::SphericalCap>& caps,
               const hyp::HPoint& p);
double domain_margin(const std::vector<hyp::SphericalCap>& caps,
                     const hyp::HPoint& p);

// ---------------------------------------------------------------------------
// Generic lift

// Field of the given functional at p. Throws geometry_error outside the
// domain. Coefficients of the plain mass-center families are provably
// positive and are asserted; the circumcentric families may carry negative
// coefficients on skewed instances, which is reported through
// min_coefficient instead. A WeightedCaps spec acts on the vertex caps.
FieldEval lift_field(const CenterSpec& spec, const CapSystem& sys,
                     const hyp::HPoint& p);

// Exact proportionality constant between the field's spatial part at the
// chart origin and the functional value: n for CM0, 2A for CM1, 3A for CM2,
// 4A for CM3, the tangency-point count for Tangency, the total volume for
// CCM, cap count for WeightedCaps at Sec weights. For Euler blends there is
// no single constant; the nominal blend of the two is returned.
double lift_kappa(const CenterSpec& spec, const CapSystem& sys);

// ---------------------------------------------------------------------------
// Verbatim cross-check paths (independent algebra, same vectors)

FieldEval field_cm1_verbatim(const hyp::HPoint& p, const CapSystem& sys);
FieldEval field_cm2_verbatim(const hyp::HPoint& p, const CapSystem& sys);
FieldEval field_cm3_verbatim(const hyp::HPoint& p, const CapSystem& sys);

// Circumcentric field. field_ccm is the authoritative path: intrinsic
// tangent lengths csch d feed the per-face volume weights and the Gram
// linear solve, exactly like the Euclidean functional. field_ccm_verbatim
// evaluates the printed closed-form coefficients instead; the two disagree
// (closed-form issue inherited from the cone circumcenter), which the
// comparison report in the test suite documents term by term.
FieldEval field_ccm(const hyp::HPoint& p, const CapSystem& sys);
FieldEval field_ccm_verbatim(const hyp::HPoint& p, const CapSystem& sys);

// lambda * (CM3 lift) + (1-lambda) * field_ccm, lambda in [0,1).
FieldEval field_lambda(const hyp::HPoint& p, const CapSystem& sys,
                       double lambda);

// ---------------------------------------------------------------------------
// Weighted cap collections on S^d, d >= 2

// f(p) = sum f_i(d_i(p)) n_i(p) with f the weight profile transported to a
// function of plane distance: Sec -> coth d, Tan -> csch d,
// PowSec(k) -> coth^k d.
FieldEval weighted_cap_field(const hyp::HPoint& p,
                             const std::vector<hyp::SphericalCap>& caps,
                             WeightFamily family, double power = 2.0);

// Potential whose negative gradient is the weighted cap field:
// sum F(d_i) with F(d) = log sinh d (Sec), log tanh(d/2) (Tan), and the
// antiderivative of coth^k for PowSec — closed-form reduction for integer
// k, adaptive quadrature (tolerance 1e-10) otherwise.
double potential(const hyp::HPoint& p,
                 const std::vector<hyp::SphericalCap>& caps,
                 WeightFamily family, double power = 2.0);

// ---------------------------------------------------------------------------
// Solvability hypotheses

struct ConditionEntry {
  std::vector<int> indices; // the coincidence set I(q)
  double lhs = 0.0;         // limit of sum over I(q) of w(t) cos(t), t -> pi/2
  double rhs = 0.0;         // limit of sum over the rest of w(t), t -> 0
  bool ok = false;          // strict lhs < rhs
};

struct ConditionReport {
  bool passes = true;
  bool unsupported = false; // a 4-fold boundary coincidence was detected
  int n_caps = 0;
  std::vector<ConditionEntry> entries;

  // One line naming the worst violated set, e.g.
  // "solvability condition fails: |I(q)| = 2 needs |I(q)| < n - |I(q)|, n = 4".
  std::string summary() const;
};

// Evaluates the boundary-coincidence solvability condition: for every
// realized coincidence set I(q) (empty set, singletons, pairwise boundary
// intersections, detected triples; tolerance 1e-9) the blow-up limit of the
// weights over I(q) must stay strictly below the small-cap limit of the
// rest. Works for any sphere dimension >= 2.
ConditionReport check_condition(const std::vector<hyp::SphericalCap>& caps,
                                WeightFamily family, double power = 2.0);

// True when the union of the open caps is disconnected (tangent caps do not
// overlap). Uses the pole product: interiors overlap iff it exceeds -1.
bool check_disconnected(const std::vector<hyp::SphericalCap>& caps);

} // namespace koebe
