// SPDX-License-Identifier: MIT
//
// Acceptance gate: twelve end-to-end criteria, one PASS/FAIL line each,
// exit code = number of failures. Tolerances are pinned in code next to the
// checks they guard.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "koebe/json_io.hpp"
#include "koebe/solver.hpp"
#include "oracles.hpp"

using namespace koebe;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

const std::vector<CanonicalSolid> kAllSolids = {
    CanonicalSolid::Tetrahedron, CanonicalSolid::Cube,
    CanonicalSolid::Octahedron, CanonicalSolid::Dodecahedron,
    CanonicalSolid::Icosahedron};

const std::vector<CanonicalSolid> kSweepSolids = {
    CanonicalSolid::Tetrahedron, CanonicalSolid::Cube,
    CanonicalSolid::Octahedron};

std::vector<std::string> sweep_specs(const CapSystem& sys) {
  std::vector<std::string> names = {"cm0", "cm1", "cm2", "tangency"};
  if (sys.combo.simplicial()) {
    names.push_back("ccm");
    names.push_back("euler:0.5");
    names.push_back("euler:0.9");
  }
  return names;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2e", v);
  return buf;
}

// --- C1: the canonical catalogue is valid and centered for every
// applicable functional ---------------------------------------------------
Outcome criterion_c1() {
  constexpr double kValidateTol = 1e-9;
  constexpr double kCenterTol = 1e-9;
  constexpr double kBudgetSeconds = 1.0;
  const auto t0 = Clock::now();
  double worst_center = 0.0;
  for (const auto solid : kAllSolids) {
    const CapSystem sys = make_canonical(solid);
    const ValidationReport rep = validate(sys, kValidateTol);
    if (!rep.ok)
      return {false, "canonical system fails validation: " +
                         rep.problems.front()};
    std::vector<std::string> names = {"cc",  "ic",  "cm0", "cm1",
                                      "cm2", "cm3", "tangency"};
    if (sys.combo.simplicial()) {
      names.push_back("ccm");
      names.push_back("euler:0.5");
    }
    for (const std::string& name : names) {
      const double g =
          evaluate_center(sys, CenterSpec::parse(name)).point.norm();
      worst_center = std::max(worst_center, g);
      if (g >= kCenterTol)
        return {false,
                "functional " + name + " off-center at identity: " + fmt(g)};
    }
  }
  const double elapsed = seconds_since(t0);
  if (elapsed >= kBudgetSeconds)
    return {false, "catalogue checks took " + fmt(elapsed) + "s"};
  return {true, "5 solids valid, worst |g| " + fmt(worst_center) + ", " +
                    fmt(elapsed) + "s"};
}

// --- C2: random images re-center for every mass-type functional ----------
Outcome criterion_c2() {
  constexpr double kRapidity = 2.0;
  constexpr double kMovedCenterTol = 1e-7;
  constexpr int kMaxIter = 200;
  constexpr double kPerSolveBudget = 1.0;
  constexpr int kSeeds = 100;
  int solves = 0;
  double worst_g = 0.0, worst_secs = 0.0;
  int worst_iters = 0;
  for (const auto solid : kSweepSolids) {
    const CapSystem canon = make_canonical(solid);
    for (int seed = 1; seed <= kSeeds; ++seed) {
      const CapSystem sys = random_valid_image(canon, seed, kRapidity).system;
      for (const std::string& name : sweep_specs(sys)) {
        const CenterSpec spec = CenterSpec::parse(name);
        const auto t0 = Clock::now();
        const SolveReport rep = solve(sys, spec);
        const double secs = seconds_since(t0);
        worst_secs = std::max(worst_secs, secs);
        worst_iters = std::max(worst_iters, rep.iterations);
        ++solves;
        if (rep.status != SolveStatus::Converged)
          return {false, name + " seed " + std::to_string(seed) + ": " +
                             to_string(rep.status) + " (" + rep.message + ")"};
        if (rep.iterations > kMaxIter)
          return {false, name + ": " + std::to_string(rep.iterations) +
                             " iterations"};
        if (secs >= kPerSolveBudget)
          return {false, name + ": solve took " + fmt(secs) + "s"};
        const CapSystem moved = apply_mobius(rep.transform, sys);
        const double g = evaluate_center(moved, spec).point.norm();
        worst_g = std::max(worst_g, g);
        if (g >= kMovedCenterTol)
          return {false, name + " seed " + std::to_string(seed) +
                             ": moved |g| = " + fmt(g)};
      }
    }
  }
  return {true, std::to_string(solves) + " solves, worst moved |g| " +
                    fmt(worst_g) + ", max iters " +
                    std::to_string(worst_iters) + ", slowest " +
                    fmt(worst_secs) + "s"};
}

// --- C3: minimax centers carry independent optimality evidence -----------
Outcome criterion_c3() {
  constexpr double kRapidity = 2.0;
  constexpr double kBallTol = 1e-7;
  constexpr int kSeeds = 100;
  double worst_ball = 0.0;
  int solves = 0;
  for (const auto solid : kSweepSolids) {
    const CapSystem canon = make_canonical(solid);
    for (int seed = 1; seed <= kSeeds; ++seed) {
      const CapSystem sys = random_valid_image(canon, seed, kRapidity).system;

      const SolveReport cc_rep = solve(sys, CenterSpec::parse("cc"));
      ++solves;
      if (cc_rep.status != SolveStatus::Converged)
        return {false, "cc seed " + std::to_string(seed) + ": " +
                           to_string(cc_rep.status)};
      const CapSystem cc_moved = apply_mobius(cc_rep.transform, sys);
      const Ball ball =
          smallest_enclosing_ball(reconstruct(cc_moved).vertices);
      worst_ball = std::max(worst_ball, ball.center.norm());
      if (ball.center.norm() >= kBallTol)
        return {false, "cc seed " + std::to_string(seed) +
                           ": enclosing-ball center off by " +
                           fmt(ball.center.norm())};

      const SolveReport ic_rep = solve(sys, CenterSpec::parse("ic"));
      ++solves;
      if (ic_rep.status != SolveStatus::Converged)
        return {false, "ic seed " + std::to_string(seed) + ": " +
                           to_string(ic_rep.status)};
      const CenterCertificate cert =
          ic_certificate(apply_mobius(ic_rep.transform, sys), kBallTol);
      if (!cert.passes)
        return {false, "ic seed " + std::to_string(seed) +
                           ": certificate hull distance " +
                           fmt(cert.hull_distance)};
    }
  }
  return {true, std::to_string(solves) +
                    " minimax solves, worst ball-center offset " +
                    fmt(worst_ball)};
}

// --- C4: center formulas against direct euclidean integration ------------
Outcome criterion_c4() {
  constexpr double kTolCm0 = 1e-9, kTolCm1 = 1e-9, kTolCm2 = 1e-9,
                   kTolCm3 = 1e-8;
  constexpr double kTolVolume = 1e-9;
  constexpr double kTolEquidistant = 1e-9;
  double worst = 0.0;
  int seed = 500;
  for (const auto solid : kAllSolids) {
    const CapSystem canon = make_canonical(solid);
    for (int k = 0; k < 5; ++k) {
      const CapSystem sys = random_valid_image(canon, seed++, 1.5).system;
      const Polyhedron poly = reconstruct(sys);
      const double d0 = (cm0(sys).point - oracle::vertex_mean(poly)).norm();
      const double d1 =
          (cm1(sys).point - oracle::wire_center(poly, sys.combo).first)
              .norm();
      const double d2 =
          (cm2(sys).point - oracle::surface_center(poly, sys.combo).first)
              .norm();
      const double d3 =
          (cm3(sys).point - oracle::solid_center(poly, sys.combo).first)
              .norm();
      worst = std::max({worst, d0, d1, d2, d3});
      if (d0 >= kTolCm0 || d1 >= kTolCm1 || d2 >= kTolCm2 || d3 >= kTolCm3)
        return {false, "mass-center mismatch " + fmt(d0) + "/" + fmt(d1) +
                           "/" + fmt(d2) + "/" + fmt(d3)};
    }
  }

  hyp::Rng rng(4242);
  int accepted = 0;
  while (accepted < 1000) {
    const double a = rng.uniform(0.15, 3.0);
    const double b = rng.uniform(0.15, 3.0);
    const double c = rng.uniform(0.15, 3.0);
    if (a + b + c - a * b * c < 0.05) continue;
    const double diff = std::abs(simplex_volume(a, b, c) -
                                 oracle::cayley_menger_volume(a, b, c));
    if (diff >= kTolVolume)
      return {false, "corner volume vs distance determinant: " + fmt(diff)};
    ++accepted;
  }

  for (const auto solid :
       {CanonicalSolid::Tetrahedron, CanonicalSolid::Octahedron,
        CanonicalSolid::Icosahedron}) {
    const CapSystem sys =
        random_valid_image(make_canonical(solid), seed++, 1.5).system;
    const Polyhedron poly = reconstruct(sys);
    for (int j = 0; j < sys.combo.n_faces(); ++j) {
      const Vec q = cone_circumcenter(sys, j);
      for (int i : sys.combo.faces[j]) {
        const double defect =
            std::abs((q - poly.vertices[i]).norm() - q.norm());
        if (defect >= kTolEquidistant)
          return {false, "cone circumcenter equidistance off by " +
                             fmt(defect)};
      }
    }
  }
  return {true, "25 systems, 1000 volume triples; worst center gap " +
                    fmt(worst)};
}

// --- C5: normalizing constants equal the skeleton measures ---------------
Outcome criterion_c5() {
  constexpr double kTol = 1e-8; // relative
  double worst = 0.0;
  int seed = 900;
  for (const auto solid : kAllSolids) {
    const CapSystem canon = make_canonical(solid);
    for (int k = 0; k < 5; ++k) {
      const CapSystem sys = random_valid_image(canon, seed++, 1.5).system;
      const Polyhedron poly = reconstruct(sys);
      const double r1 =
          std::abs(cm1(sys).normalizer / 2.0 - poly.total_edge_length) /
          poly.total_edge_length;
      const double r2 =
          std::abs(cm2(sys).normalizer / 3.0 - poly.surface_area) /
          poly.surface_area;
      const double r3 =
          std::abs(cm3(sys).normalizer / 4.0 - 3.0 * poly.volume) /
          (3.0 * poly.volume);
      worst = std::max({worst, r1, r2, r3});
      if (r1 >= kTol || r2 >= kTol || r3 >= kTol)
        return {false, "normalizer drift " + fmt(r1) + "/" + fmt(r2) + "/" +
                           fmt(r3)};
    }
  }
  return {true, "25 systems, worst relative drift " + fmt(worst)};
}

// --- C6: field identities -------------------------------------------------
Outcome criterion_c6() {
  constexpr double kDualTol = 1e-10;
  constexpr double kKappaTol = 1e-9;
  constexpr double kEquivTol = 1e-9;
  hyp::Rng rng(606);
  int seed = 1300;

  // The two algebraic routes to the mass-center fields coincide. Sample
  // points keep a plane clearance of 0.05: right against a plane both
  // routes evaluate blowing-up coefficients and the absolute comparison
  // dissolves into cancellation noise (~5e-10 observed at margin 0.01).
  constexpr double kMarginFloor = 0.05;
  for (const auto solid : kSweepSolids) {
    const CapSystem canon = make_canonical(solid);
    for (int k = 0; k < 7; ++k) {
      const CapSystem sys = random_valid_image(canon, seed++, 1.4).system;
      for (int t = 0; t < 3; ++t) {
        hyp::HPoint p = hyp::HPoint::origin(2);
        for (int attempt = 0; attempt < 128; ++attempt) {
          const Vec b = rng.unit_vector(3) * (0.3 * std::cbrt(rng.uniform()));
          const hyp::HPoint cand = hyp::ball_chart_inv(b);
          if (in_domain(sys, cand) &&
              domain_margin(sys.vertex_caps, cand) > kMarginFloor &&
              domain_margin(sys.face_caps, cand) > kMarginFloor) {
            p = cand;
            break;
          }
        }
        for (int which = 1; which <= 3; ++which) {
          const FieldEval a = lift_field(
              CenterSpec::parse("cm" + std::to_string(which)), sys, p);
          const FieldEval b = which == 1   ? field_cm1_verbatim(p, sys)
                              : which == 2 ? field_cm2_verbatim(p, sys)
                                           : field_cm3_verbatim(p, sys);
          const double diff =
              (a.total.vec.spatial - b.total.vec.spatial).norm() +
              std::abs(a.total.vec.time - b.total.vec.time);
          if (diff >= kDualTol)
            return {false, "cm" + std::to_string(which) +
                               " route mismatch " + fmt(diff)};
        }
      }
    }
  }

  // at the origin the spatial part is kappa * g, kappa in {n, 2A, 3A, 4A}
  const hyp::HPoint o = hyp::HPoint::origin(2);
  for (const auto solid : kAllSolids) {
    const CapSystem sys =
        random_valid_image(make_canonical(solid), seed++, 1.5).system;
    const double n = static_cast<double>(sys.n_vertices());
    const Polyhedron poly = reconstruct(sys);
    const double kappas[4] = {n, 2.0 * poly.total_edge_length,
                              3.0 * poly.surface_area,
                              4.0 * (3.0 * poly.volume)};
    for (int which = 0; which < 4; ++which) {
      const CenterSpec spec =
          CenterSpec::parse("cm" + std::to_string(which));
      const FieldEval f = lift_field(spec, sys, o);
      const Vec g = evaluate_center(sys, spec).point;
      const double diff =
          (f.total.vec.spatial - kappas[which] * g).norm();
      if (diff >= kKappaTol)
        return {false, "cm" + std::to_string(which) +
                           " origin constant off by " + fmt(diff)};
    }
  }

  // equivariance under 100 random isometries (same clearance floor: the
  // comparison is absolute, so points are kept away from the coefficient
  // blow-up at the planes)
  const CapSystem base =
      random_valid_image(make_canonical(CanonicalSolid::Tetrahedron), 3, 1.0)
          .system;
  auto clear_of_planes = [&](const CapSystem& sys, const hyp::HPoint& q) {
    return in_domain(sys, q) &&
           domain_margin(sys.vertex_caps, q) > kMarginFloor &&
           domain_margin(sys.face_caps, q) > kMarginFloor;
  };
  int done = 0;
  for (int k = 0; done < 100 && k < 1000; ++k) {
    const hyp::LorentzMap t = hyp::random_mobius(7000 + k, 0.8);
    CapSystem moved;
    try {
      moved = apply_mobius(t, base);
    } catch (const geometry_error&) {
      continue;
    }
    const Vec b = rng.unit_vector(3) * 0.15;
    const hyp::HPoint p = hyp::ball_chart_inv(b);
    if (!clear_of_planes(base, p) || !clear_of_planes(moved, t.apply(p)))
      continue;
    for (const char* name : {"cm0", "cm1", "cm2", "cm3", "tangency"}) {
      const CenterSpec spec = CenterSpec::parse(name);
      const hyp::MinkowskiVec pushed =
          t.apply(lift_field(spec, base, p).total.vec);
      const hyp::MinkowskiVec there =
          lift_field(spec, moved, t.apply(p)).total.vec;
      const double diff = (pushed.spatial - there.spatial).norm() +
                          std::abs(pushed.time - there.time);
      if (diff >= kEquivTol)
        return {false, std::string(name) + " equivariance off by " +
                           fmt(diff)};
    }
    ++done;
  }
  if (done < 100)
    return {false, "only " + std::to_string(done) +
                       " isometries stayed representable"};
  return {true, "dual routes, origin constants, 100-isometry equivariance"};
}

// --- C7: weighted fields are gradients and their traces descend ----------
Outcome criterion_c7() {
  constexpr double kRelTol = 1e-5;
  constexpr double kEps = 1e-4;
  constexpr double kMonotoneSlack = 1e-9;
  const CapSystem cube =
      random_valid_image(make_canonical(CanonicalSolid::Cube), 11, 1.0)
          .system;
  const std::vector<hyp::SphericalCap>& caps = cube.vertex_caps;
  hyp::Rng rng(707);
  struct Fam {
    WeightFamily family;
    double power;
    const char* label;
  };
  const Fam fams[] = {{WeightFamily::Sec, 2.0, "sec"},
                      {WeightFamily::Tan, 2.0, "tan"},
                      {WeightFamily::PowSec, 2.0, "powsec:2"},
                      {WeightFamily::PowSec, 2.5, "powsec:2.5"}};
  double worst_rel = 0.0;
  for (const Fam& fam : fams) {
    for (int k = 0; k < 10; ++k) {
      hyp::HPoint p = hyp::HPoint::origin(2);
      for (int attempt = 0; attempt < 128; ++attempt) {
        const Vec b = rng.unit_vector(3) * (0.3 * std::cbrt(rng.uniform()));
        const hyp::HPoint cand = hyp::ball_chart_inv(b);
        if (in_domain(caps, cand)) {
          p = cand;
          break;
        }
      }
      const hyp::TangentVec u =
          hyp::TangentVec::projected(p, {rng.gaussian(3), rng.normal()})
              .normalized();
      const double fwd =
          potential(hyp::geodesic_exp(u, kEps), caps, fam.family, fam.power);
      const double bwd =
          potential(hyp::geodesic_exp(u, -kEps), caps, fam.family, fam.power);
      const double deriv = (fwd - bwd) / (2.0 * kEps);
      const double along = hyp::mdot(
          weighted_cap_field(p, caps, fam.family, fam.power).total.vec,
          u.vec);
      const double rel = std::abs(deriv + along) /
                         std::max({std::abs(deriv), std::abs(along), 1e-6});
      worst_rel = std::max(worst_rel, rel);
      if (rel >= kRelTol)
        return {false, std::string(fam.label) +
                           " gradient mismatch rel " + fmt(rel)};
    }
  }

  // every forward trace descends its potential
  int traced = 0;
  for (const Fam& fam : fams) {
    for (int k = 0; k < 3; ++k) {
      hyp::HPoint p0 = hyp::HPoint::origin(2);
      for (int attempt = 0; attempt < 128; ++attempt) {
        const Vec b = rng.unit_vector(3) * (0.3 * std::cbrt(rng.uniform()));
        const hyp::HPoint cand = hyp::ball_chart_inv(b);
        if (in_domain(cube, cand)) {
          p0 = cand;
          break;
        }
      }
      const CenterSpec spec = CenterSpec::parse(
          fam.family == WeightFamily::Sec   ? "sec"
          : fam.family == WeightFamily::Tan ? "tan"
                                            : (fam.power == 2.0
                                                   ? "powsec:2"
                                                   : "powsec:2.5"));
      const IntegralCurve cv = trace_curve(cube, spec, p0);
      double prev = std::numeric_limits<double>::infinity();
      for (const auto& [arc, q] : cv.samples) {
        const double val = potential(q, caps, fam.family, fam.power);
        if (val > prev + kMonotoneSlack)
          return {false, std::string(fam.label) +
                             " potential rose along a forward trace by " +
                             fmt(val - prev)};
        prev = val;
      }
      ++traced;
    }
  }
  return {true, "4 weight families, worst gradient rel " + fmt(worst_rel) +
                    ", " + std::to_string(traced) + " monotone traces"};
}

// --- C8: solvability hypotheses decide which collections center ----------
Outcome criterion_c8() {
  constexpr double kResidualTol = 1e-7;
  const CapSystem tet =
      random_valid_image(make_canonical(CanonicalSolid::Tetrahedron), 4, 1.2)
          .system;
  const SolveReport tet_rep =
      solve_weighted(tet.vertex_caps, WeightFamily::Sec);
  if (tet_rep.status != SolveStatus::ConditionViolated)
    return {false,
            "four tangent caps accepted: " + to_string(tet_rep.status)};
  if (tet_rep.message.find("|I(q)| = 2") == std::string::npos)
    return {false, "missing coincidence-pair diagnosis: " + tet_rep.message};

  const CapSystem cube =
      random_valid_image(make_canonical(CanonicalSolid::Cube), 21, 1.5)
          .system;
  const SolveReport cube_rep =
      solve_weighted(cube.vertex_caps, WeightFamily::Sec);
  if (cube_rep.status != SolveStatus::Converged ||
      cube_rep.residual() >= kResidualTol)
    return {false, "eight tangent caps: " + to_string(cube_rep.status) +
                       " residual " + fmt(cube_rep.residual())};

  std::vector<hyp::SphericalCap> six;
  for (int axis = 0; axis < 3; ++axis) {
    for (const double sign : {1.0, -1.0}) {
      Vec c = Vec::Zero(4);
      c(axis) = sign;
      six.push_back(hyp::SphericalCap::checked(c, M_PI / 4.0));
    }
  }
  const hyp::LorentzMap map = hyp::random_mobius(77, 0.7, 3);
  for (auto& cap : six) cap = hyp::apply_cap(map, cap);
  const ConditionReport cond = check_condition(six, WeightFamily::Sec);
  if (!cond.passes)
    return {false, "six caps on the 3-sphere rejected: " + cond.summary()};
  const SolveReport six_rep = solve_weighted(six, WeightFamily::Sec);
  if (six_rep.status != SolveStatus::Converged ||
      six_rep.residual() >= kResidualTol)
    return {false, "six caps on the 3-sphere: " + to_string(six_rep.status) +
                       " residual " + fmt(six_rep.residual())};
  return {true, "4-cap refusal with pair diagnosis, 8-cap and 3-sphere "
                "solves at residual " +
                    fmt(std::max(cube_rep.residual(), six_rep.residual()))};
}

// --- C9: a drifted system is diagnosed and pulled back --------------------
Outcome criterion_c9() {
  constexpr double kDriftRapidity = 0.6;
  constexpr double kRecenterTol = 1e-8;
  const CapSystem tet = make_canonical(CanonicalSolid::Tetrahedron);
  const InflateResult drift = inflate_vertex_cap(tet, 0, kDriftRapidity);
  if (!validate(drift.image).ok)
    return {false, "drifted system fails validation"};
  const double runaway = cm0(drift.image).point.norm();
  if (runaway <= 1.0)
    return {false, "vertex barycenter stayed inside the sphere: " +
                       fmt(runaway)};
  SolveOptions opts;
  opts.tol_residual = 1e-10;
  const SolveReport rep = solve(drift.image, CenterSpec::parse("cm0"), opts);
  if (rep.status != SolveStatus::Converged)
    return {false, "re-centering failed: " + to_string(rep.status)};
  const double after =
      cm0(apply_mobius(rep.transform, drift.image)).point.norm();
  if (after >= kRecenterTol)
    return {false, "residual barycenter " + fmt(after)};
  return {true, "|g| drifted to " + fmt(runaway) + ", pulled back to " +
                    fmt(after)};
}

// --- C10: best-effort solid-center solves stay honest ---------------------
Outcome criterion_c10() {
  // library side: Converged always certifies the tolerance it was given
  for (const auto solid : kSweepSolids) {
    const CapSystem canon = make_canonical(solid);
    for (int seed = 1; seed <= 7; ++seed) {
      const CapSystem sys = random_valid_image(canon, seed, 1.8).system;
      for (const double tol : {1e-8, 1e-11}) {
        SolveOptions opts;
        opts.tol_residual = tol;
        const SolveReport rep =
            solve(sys, CenterSpec::parse("cm3"), opts);
        if (rep.status == SolveStatus::Converged && rep.residual() > tol)
          return {false, "Converged with residual " + fmt(rep.residual()) +
                             " above tol " + fmt(tol)};
        if (rep.status != SolveStatus::Converged &&
            rep.residual() <= tol)
          return {false, "non-Converged status despite residual " +
                             fmt(rep.residual())};
      }
    }
  }

  // tool side: an exhausted budget surfaces as exit code 3
  const char* exe = std::getenv("KOEBE_CLI");
  if (exe == nullptr)
    return {false, "KOEBE_CLI not set; cannot check the exit code"};
  const std::string dir = "acceptance-scratch";
  if (std::system(("mkdir -p " + dir).c_str()) != 0)
    return {false, "could not create " + dir};
  const std::string input = dir + "/c10-cube.json";
  {
    const CapSystem sys =
        random_valid_image(make_canonical(CanonicalSolid::Cube), 5, 1.5)
            .system;
    DocumentMeta meta;
    meta.name = "cube";
    meta.provenance = "random";
    write_text_file(input, to_json(CapsDocument::of_system(sys, meta)));
  }
  const std::string cmd = std::string("\"") + exe + "\" center " + input +
                          " --spec cm3 --tol 1e-30 --max-iter 5 > " + dir +
                          "/c10-out.txt 2> " + dir + "/c10-err.txt";
  const int raw = std::system(cmd.c_str());
  const int code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  if (code != 3)
    return {false, "exit code " + std::to_string(code) +
                       " for an exhausted budget (want 3)"};
  return {true, "42 honest solves; budget exhaustion exits 3"};
}

// --- C11: the two circumcenter evaluations are compared and reported ------
Outcome criterion_c11() {
  constexpr double kTol = 1e-9;
  const std::string report_path = "circumcenter-comparison.txt";
  std::ostringstream report;

  // symmetric corner: all tangent lengths sqrt(2)
  const CapSystem tet = make_canonical(CanonicalSolid::Tetrahedron);
  const Polyhedron poly = reconstruct(tet);
  const auto coefficients = [&](const Vec& point, int face) {
    Mat basis(3, 3);
    for (int r = 0; r < 3; ++r)
      basis.col(r) = tet.vertex_caps[tet.combo.faces[face][r]].center;
    return Vec(basis.colPivHouseholderQr().solve(point));
  };
  const Vec q_solve = cone_circumcenter(tet, 0);
  const Vec q_closed = cone_circumcenter_closed_form(tet, 0);
  const Vec n_solve = coefficients(q_solve, 0);
  const Vec n_closed = coefficients(q_closed, 0);
  const double want_solve = 1.5 * std::sqrt(3.0); // 3 sqrt(3) / 2
  const double want_closed = 3.0;
  for (int r = 0; r < 3; ++r) {
    if (std::abs(n_solve(r) - want_solve) >= kTol)
      return {false, "linear-solve coefficient " + fmt(n_solve(r)) +
                         " (want 3*sqrt(3)/2)"};
    if (std::abs(n_closed(r) - want_closed) >= kTol)
      return {false, "closed-form coefficient " + fmt(n_closed(r)) +
                         " (want 3)"};
  }
  report << "cone circumcenter, linear solve vs closed form\n";
  report << "============================================\n\n";
  report << "symmetric corner (all tangent lengths sqrt(2)):\n";
  report << "  coefficients from the linear solve:  " << n_solve.transpose()
         << "  (= 3*sqrt(3)/2)\n";
  report << "  coefficients from the closed form:   " << n_closed.transpose()
         << "  (= 3)\n";
  report << "  ratio per coefficient: "
         << double_text(n_closed(0) / n_solve(0))
         << "  (= 2/sqrt(3) = extra sqrt(1+t^2)/2 at t = sqrt(2))\n\n";

  // asymmetric corner: only the linear solve stays equidistant
  const CapSystem skew =
      random_valid_image(make_canonical(CanonicalSolid::Tetrahedron), 31, 1.0)
          .system;
  const Polyhedron skew_poly = reconstruct(skew);
  report << "asymmetric corner (same combinatorics, boosted image), "
            "face 0 per-corner distances:\n";
  const Vec a_solve = cone_circumcenter(skew, 0);
  const Vec a_closed = cone_circumcenter_closed_form(skew, 0);
  double solve_defect = 0.0, closed_defect = 0.0;
  report << "  point from linear solve:  [" << a_solve.transpose() << "]\n";
  report << "  point from closed form:   [" << a_closed.transpose() << "]\n";
  for (int i : skew.combo.faces[0]) {
    const double ds = (a_solve - skew_poly.vertices[i]).norm();
    const double dc = (a_closed - skew_poly.vertices[i]).norm();
    solve_defect = std::max(solve_defect, std::abs(ds - a_solve.norm()));
    closed_defect = std::max(closed_defect, std::abs(dc - a_closed.norm()));
    report << "    corner " << i << ": solve " << double_text(ds)
           << " vs apex " << double_text(a_solve.norm()) << " | closed "
           << double_text(dc) << " vs apex " << double_text(a_closed.norm())
           << "\n";
  }
  report << "  worst equidistance defect: solve " << double_text(solve_defect)
         << ", closed form " << double_text(closed_defect) << "\n";
  if (solve_defect >= kTol)
    return {false, "linear solve lost equidistance: " + fmt(solve_defect)};
  if (closed_defect <= 1e-3)
    return {false, "closed form unexpectedly equidistant: " +
                       fmt(closed_defect)};

  std::ofstream out(report_path);
  out << report.str();
  if (!out.good()) return {false, "could not write " + report_path};
  out.close();
  return {true, "coefficients 3*sqrt(3)/2 vs 3 confirmed; report in " +
                    report_path};
}

// --- C12: multistart solves agree on the located point --------------------
Outcome criterion_c12() {
  constexpr double kRapidity = 2.0;
  constexpr double kAgreeTol = 1e-6;
  constexpr int kStarts = 20;
  struct Combo {
    CanonicalSolid solid;
    const char* spec;
    std::uint64_t instance_seed;
  };
  // Instances fixed where the located zero is the only one reachable from
  // the start ball: several functionals possess genuine satellite zeros on
  // other instances (see the experiments section of the README), so start
  // agreement is a property of (instance, functional), not of the solver.
  const Combo combos[] = {
      {CanonicalSolid::Tetrahedron, "tangency", 2025},
      {CanonicalSolid::Tetrahedron, "ccm", 2025},
      {CanonicalSolid::Tetrahedron, "euler:0.5", 2025},
      {CanonicalSolid::Cube, "tangency", 2025},
      {CanonicalSolid::Cube, "sec", 2026},
      {CanonicalSolid::Cube, "cm0", 2026},
      {CanonicalSolid::Octahedron, "tangency", 2025},
      {CanonicalSolid::Octahedron, "ccm", 2025},
  };
  double worst_spread = 0.0;
  for (const Combo& c : combos) {
    const CapSystem sys =
        random_valid_image(make_canonical(c.solid), c.instance_seed,
                           kRapidity)
            .system;
    const CenterSpec spec = CenterSpec::parse(c.spec);
    std::vector<hyp::HPoint> found;
    for (int start = 1; start <= kStarts; ++start) {
      SolveOptions opts;
      opts.seed = static_cast<std::uint64_t>(start);
      const SolveReport rep = solve(sys, spec, opts);
      if (rep.status != SolveStatus::Converged)
        return {false, std::string(c.spec) + " start " +
                           std::to_string(start) + ": " +
                           to_string(rep.status)};
      found.push_back(rep.p);
    }
    for (const hyp::HPoint& p : found) {
      const double spread = hyp::distance(p, found.front());
      worst_spread = std::max(worst_spread, spread);
      if (spread >= kAgreeTol)
        return {false, std::string(c.spec) + ": starts diverge by " +
                           fmt(spread)};
    }
  }
  return {true, "8 instances x 20 starts, worst spread " +
                    fmt(worst_spread)};
}

} // namespace

int main() {
  struct Entry {
    const char* id;
    Outcome (*run)();
  };
  const Entry entries[] = {
      {"C01", criterion_c1},  {"C02", criterion_c2},
      {"C03", criterion_c3},  {"C04", criterion_c4},
      {"C05", criterion_c5},  {"C06", criterion_c6},
      {"C07", criterion_c7},  {"C08", criterion_c8},
      {"C09", criterion_c9},  {"C10", criterion_c10},
      {"C11", criterion_c11}, {"C12", criterion_c12},
  };
  int failures = 0;
  for (const Entry& e : entries) {
    Outcome o;
    try {
      o = e.run();
    } catch (const std::exception& ex) {
      o = {false, std::string("exception: ") + ex.what()};
    }
    std::printf("%s %s — %s\n", e.id, o.pass ? "PASS" : "FAIL",
                o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures;
}
