// SPDX-License-Identifier: MIT
//
// Command-line front end. Subcommands:
//   generate     canonical solids, random isometry images, drifted systems
//   validate     check every defining relation, print a residual table
//   reconstruct  polyhedron from a system, OBJ export
//   center       move a chosen center functional to the origin
//   caps-center  weighted centering of a bare cap collection on S^d
//   trace        integral curves of a center field, CSV export
//   batch        run a manifest of centering jobs on a worker pool
//
// Exit codes: 0 success (center: converged), 1 validation found violations,
// 2 bad arguments / unreadable or invalid documents, 3 the solver stopped
// without converging, 4 the request does not apply to the system
// (e.g. circumcentric centers on non-triangular faces), 5 the weighted
// solvability hypothesis fails.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "koebe/errors.hpp"
#include "koebe/fields.hpp"
#include "koebe/json_io.hpp"
#include "batch.hpp"

namespace {

using namespace koebe;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNoConvergence = 3;
constexpr int kExitNotApplicable = 4;
constexpr int kExitHypothesis = 5;

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-")
    std::cout << text;
  else
    write_text_file(path, text);
}

CapsDocument load_caps(const std::string& path) {
  return caps_from_json(read_text_file(path));
}

// Full system expected: rebuild combinatorics and insist the caps satisfy
// the tangent-system relations before any geometry runs on them.
CapSystem load_system(const std::string& path, double tol = 1e-7) {
  const CapsDocument doc = load_caps(path);
  CapSystem sys = doc.to_system();
  const ValidationReport report = validate(sys, tol);
  if (!report.ok) {
    std::string msg = "document does not validate:";
    for (const auto& p : report.problems) msg += "\n  " + p;
    throw parse_error(msg);
  }
  return sys;
}

int status_exit(SolveStatus status) {
  switch (status) {
  case SolveStatus::Converged:
    return kExitOk;
  case SolveStatus::MaxIter:
  case SolveStatus::BoundaryEscape:
    return kExitNoConvergence;
  case SolveStatus::ConditionViolated:
    return kExitHypothesis;
  case SolveStatus::NotSupported:
    return kExitNotApplicable;
  }
  return kExitNoConvergence;
}

void print_report(const SolveReport& report) {
  std::cout << "status=" << to_string(report.status)
            << " iterations=" << report.iterations
            << " residual=" << double_text(report.residual())
            << " seconds=" << double_text(report.wall_seconds) << '\n';
  if (!report.message.empty()) std::cout << report.message << '\n';
}

DocumentMeta derived_meta(const DocumentMeta& in, const std::string& provenance,
                          const std::string& spec_name) {
  DocumentMeta meta = in;
  meta.provenance = provenance;
  meta.center_spec = spec_name;
  return meta;
}

// ---------------------------------------------------------------------------
// generate

struct GenerateArgs {
  std::string solid;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<double> rapidity;
  std::string drift; // "index:rapidity"
};

int cmd_generate(const GenerateArgs& args) {
  CapSystem sys = make_canonical(parse_solid(args.solid));
  DocumentMeta meta;
  meta.name = solid_name(parse_solid(args.solid));
  meta.provenance = "canonical";

  if (!args.drift.empty()) {
    const auto colon = args.drift.find(':');
    if (colon == std::string::npos)
      throw parse_error("--drift expects <vertex>:<rapidity>");
    int vertex = 0;
    double rapidity = 0.0;
    try {
      vertex = std::stoi(args.drift.substr(0, colon));
      rapidity = std::stod(args.drift.substr(colon + 1));
    } catch (const std::exception&) {
      throw parse_error("--drift expects <vertex>:<rapidity>");
    }
    const InflateResult res = inflate_vertex_cap(sys, vertex, rapidity);
    sys = res.image;
    meta.provenance = "drift";
    meta.rapidity = rapidity;
    const CenterValue c = cm0(sys);
    std::cerr << "drift: vertex cap " << vertex << " radius "
              << double_text(res.target_radius) << ", |cm0| = "
              << double_text(c.point.norm()) << '\n';
  } else if (args.seed || args.rapidity) {
    const std::uint64_t seed = args.seed.value_or(1);
    const double rapidity = args.rapidity.value_or(1.0);
    sys = random_valid_image(sys, seed, rapidity).system;
    meta.provenance = "random";
    meta.seed = seed;
    meta.rapidity = rapidity;
  }

  const ValidationReport report = validate(sys);
  if (!report.ok)
    throw geometry_error("generated system failed validation");
  emit(args.out, to_json(CapsDocument::of_system(sys, meta)));
  return kExitOk;
}

// ---------------------------------------------------------------------------
// validate

struct ValidateArgs {
  std::string input;
  double tol = 1e-9;
};

int cmd_validate(const ValidateArgs& args) {
  const CapsDocument doc = load_caps(args.input);
  if (doc.bare()) {
    std::cout << "bare collection: " << doc.vertex_caps.size()
              << " caps on S^" << doc.dimension
              << ", per-cap checks passed on load\n";
    return kExitOk;
  }
  const CapSystem sys = doc.to_system();
  const ValidationReport report = validate(sys, args.tol);

  const auto row = [&](const char* label, double worst) {
    // Checks over empty pair sets (e.g. non-adjacent vertices of a
    // tetrahedron) report -inf: nothing to violate.
    std::cout << label
              << (std::isfinite(worst) ? double_text(worst) : "none")
              << "  tol " << double_text(args.tol)
              << (worst <= args.tol ? "  ok" : "  FAIL") << '\n';
  };
  std::cout << "system: " << sys.n_vertices() << " vertices, "
            << sys.combo.n_edges() << " edges, " << sys.combo.n_faces()
            << " faces\n";
  row("edge tangency            ", report.worst_edge_tangency);
  row("vertex/face incidence    ", report.worst_incidence);
  row("vertex cap separation    ", report.worst_vertex_overlap);
  row("face cap tangency        ", report.worst_face_tangency);
  row("face cap separation      ", report.worst_face_overlap);
  row("vertex/face separation   ", report.worst_vertex_face_overlap);
  row("tangency point agreement ", report.worst_tangency_mismatch);
  for (const auto& p : report.problems) std::cout << "problem: " << p << '\n';
  std::cout << (report.ok ? "valid\n" : "invalid\n");
  return report.ok ? kExitOk : kExitInvalid;
}

// ---------------------------------------------------------------------------
// reconstruct

struct ReconstructArgs {
  std::string input;
  std::string out_mesh;
};

int cmd_reconstruct(const ReconstructArgs& args) {
  const CapSystem sys = load_system(args.input);
  const Polyhedron poly = reconstruct(sys);

  double min_edge = std::numeric_limits<double>::infinity(), max_edge = 0.0;
  for (const auto& e : sys.combo.edges) {
    const double len = (poly.vertices[e[0]] - poly.vertices[e[1]]).norm();
    min_edge = std::min(min_edge, len);
    max_edge = std::max(max_edge, len);
  }
  std::cout << "vertices=" << poly.vertices.size()
            << " edges=" << sys.combo.n_edges()
            << " faces=" << sys.combo.n_faces() << '\n'
            << "edge length min=" << double_text(min_edge)
            << " max=" << double_text(max_edge) << '\n'
            << "total_edge_length=" << double_text(poly.total_edge_length)
            << " surface_area=" << double_text(poly.surface_area)
            << " volume=" << double_text(poly.volume) << '\n';
  if (!args.out_mesh.empty()) emit(args.out_mesh, to_obj(poly, sys.combo));
  return kExitOk;
}

// ---------------------------------------------------------------------------
// center

struct CenterArgs {
  std::string input;
  std::string spec;
  double tol = 1e-8;
  int max_iter = 200;
  std::string solver = "auto";
  std::uint64_t seed = 0;
  std::string out_system;
  std::string out_transform;
  std::string out_mesh;
};

SolveMethod parse_method(const std::string& text) {
  if (text == "auto") return SolveMethod::Auto;
  if (text == "newton") return SolveMethod::Newton;
  if (text == "flow") return SolveMethod::Flow;
  throw parse_error("unknown solver \"" + text + "\" (auto, newton, flow)");
}

int cmd_center(const CenterArgs& args) {
  const CapsDocument doc = load_caps(args.input);
  const CenterSpec spec = CenterSpec::parse(args.spec);
  SolveOptions opts;
  opts.tol_residual = args.tol;
  opts.max_iter = args.max_iter;
  opts.method = parse_method(args.solver);
  opts.seed = args.seed;

  SolveReport report;
  if (doc.bare()) {
    if (spec.kind != CenterKind::WeightedCaps)
      throw parse_error(
          "bare cap documents only support weight-family specs; "
          "use a full system document for polyhedral centers");
    report = solve_weighted(doc.vertex_caps, spec.family, spec.power, opts);
    print_report(report);
    if (!args.out_transform.empty() &&
        (report.status == SolveStatus::Converged ||
         report.status == SolveStatus::MaxIter)) {
      emit(args.out_transform,
           to_json(TransformDocument{
               report.transform,
               derived_meta(doc.meta, "centered", spec.name())}));
    }
    return status_exit(report.status);
  }

  const CapSystem sys = [&] {
    CapSystem s = doc.to_system();
    const ValidationReport v = validate(s, 1e-7);
    if (!v.ok) {
      std::string msg = "document does not validate:";
      for (const auto& p : v.problems) msg += "\n  " + p;
      throw parse_error(msg);
    }
    return s;
  }();

  report = solve(sys, spec, opts);
  print_report(report);

  const bool have_point = report.status == SolveStatus::Converged ||
                          report.status == SolveStatus::MaxIter;
  if (have_point) {
    const CapSystem moved = apply_mobius(report.transform, sys);
    const ValidationReport check = validate(moved, 1e-7);
    if (!check.ok)
      throw geometry_error("centered image failed re-validation");
    const DocumentMeta meta = derived_meta(doc.meta, "centered", spec.name());
    if (!args.out_system.empty())
      emit(args.out_system, to_json(CapsDocument::of_system(moved, meta)));
    if (!args.out_transform.empty())
      emit(args.out_transform, to_json(TransformDocument{report.transform, meta}));
    if (!args.out_mesh.empty())
      emit(args.out_mesh, to_obj(reconstruct(moved), moved.combo));
  }
  return status_exit(report.status);
}

// ---------------------------------------------------------------------------
// caps-center

struct CapsCenterArgs {
  std::string input;
  std::string weights = "sec";
  double tol = 1e-8;
  int max_iter = 200;
  std::uint64_t seed = 0;
  std::string out_caps;
  std::string out_transform;
};

int cmd_caps_center(const CapsCenterArgs& args) {
  const CapsDocument doc = load_caps(args.input);
  const CenterSpec spec = CenterSpec::parse(args.weights);
  if (spec.kind != CenterKind::WeightedCaps)
    throw parse_error("--weights expects sec, tan, or powsec:<k>");

  SolveOptions opts;
  opts.tol_residual = args.tol;
  opts.max_iter = args.max_iter;
  opts.seed = args.seed;
  const SolveReport report =
      solve_weighted(doc.vertex_caps, spec.family, spec.power, opts);
  print_report(report);

  if (report.status == SolveStatus::Converged ||
      report.status == SolveStatus::MaxIter) {
    const DocumentMeta meta = derived_meta(doc.meta, "centered", spec.name());
    if (!args.out_caps.empty()) {
      std::vector<hyp::SphericalCap> moved;
      for (const auto& cap : doc.vertex_caps)
        moved.push_back(hyp::apply_cap(report.transform, cap));
      emit(args.out_caps, to_json(CapsDocument::of_caps(std::move(moved), meta)));
    }
    if (!args.out_transform.empty())
      emit(args.out_transform,
           to_json(TransformDocument{report.transform, meta}));
  }
  return status_exit(report.status);
}

// ---------------------------------------------------------------------------
// trace

struct TraceArgs {
  std::string input;
  std::string spec;
  int starts = 5;
  std::uint64_t seed = 1;
  bool backward = false;
  double tol = 1e-8;
  std::string out_csv;
};

int cmd_trace(const TraceArgs& args) {
  const CapSystem sys = load_system(args.input);
  const CenterSpec spec = CenterSpec::parse(args.spec);
  if (args.starts < 1) throw parse_error("--starts must be at least 1");

  // Start set: the chart origin (always interior for a valid system), then
  // seeded random interior points.
  std::vector<hyp::HPoint> starts{hyp::HPoint::origin(sys.sphere_dim())};
  hyp::Rng rng(args.seed);
  while (static_cast<int>(starts.size()) < args.starts) {
    bool placed = false;
    for (int attempt = 0; attempt < 256 && !placed; ++attempt) {
      const Vec y = rng.unit_vector(3) *
                    (0.35 * std::cbrt(rng.uniform(0.0, 1.0)));
      const hyp::HPoint p = hyp::ball_chart_inv(y);
      if (domain_margin(sys, p) > 1e-3) {
        starts.push_back(p);
        placed = true;
      }
    }
    if (!placed)
      throw geometry_error("could not place a random start inside the domain");
  }

  TraceOptions topt;
  topt.forward = !args.backward;
  topt.tol_residual = args.tol;
  std::vector<IntegralCurve> curves;
  for (std::size_t i = 0; i < starts.size(); ++i) {
    curves.push_back(trace_curve(sys, spec, starts[i], topt));
    const IntegralCurve& c = curves.back();
    std::cout << "curve " << i << ": endpoint=" << to_string(c.endpoint)
              << " plane=" << c.plane_index
              << " samples=" << c.samples.size() << " arc="
              << double_text(c.samples.empty() ? 0.0 : c.samples.back().first)
              << '\n';
  }
  emit(args.out_csv, trace_csv(sys, spec, curves));
  return kExitOk;
}

} // namespace

// ---------------------------------------------------------------------------

int main(int argc, char** argv) {
  CLI::App app{"tangent cap systems on the unit sphere: generation, "
               "validation, centering, field tracing"};
  app.require_subcommand(1);
  int rc = kExitOk;

  GenerateArgs gen;
  CLI::App* g = app.add_subcommand(
      "generate", "Emit a canonical solid, a random isometry image of one, "
                  "or a drifted system");
  g->add_option("solid", gen.solid,
                "tetrahedron | cube | octahedron | dodecahedron | icosahedron")
      ->required();
  g->add_option("--out", gen.out, "output path (default stdout)");
  auto* gseed = g->add_option("--random-seed", gen.seed,
                              "apply a random valid isometry with this seed");
  auto* grap = g->add_option("--rapidity", gen.rapidity,
                             "rapidity bound for the random isometry "
                             "(default 1.0)");
  auto* gdrift = g->add_option(
      "--drift", gen.drift,
      "<vertex>:<rapidity>  push one vertex cap toward a hemisphere");
  gdrift->excludes(gseed)->excludes(grap);
  g->callback([&] { rc = cmd_generate(gen); });

  ValidateArgs val;
  CLI::App* v = app.add_subcommand(
      "validate", "Check the defining relations of a cap document");
  v->add_option("input", val.input, "caps document")->required();
  v->add_option("--tol", val.tol, "residual tolerance (default 1e-9)");
  v->callback([&] { rc = cmd_validate(val); });

  ReconstructArgs rec;
  CLI::App* r = app.add_subcommand(
      "reconstruct", "Rebuild the tangent polyhedron and export a mesh");
  r->add_option("input", rec.input, "caps document")->required();
  r->add_option("--out-mesh", rec.out_mesh, "OBJ output path");
  r->callback([&] { rc = cmd_reconstruct(rec); });

  CenterArgs cen;
  CLI::App* c = app.add_subcommand(
      "center", "Find the isometry moving a center functional to the origin");
  c->add_option("input", cen.input, "caps document")->required();
  c->add_option("--spec", cen.spec,
                "cc | ic | cm0..cm3 | ccm | euler:<l> | tangency | "
                "sec | tan | powsec:<k>")
      ->required();
  c->add_option("--tol", cen.tol, "residual tolerance (default 1e-8)");
  c->add_option("--max-iter", cen.max_iter, "iteration budget (default 200)");
  c->add_option("--solver", cen.solver, "auto | newton | flow");
  c->add_option("--seed", cen.seed, "nonzero: randomized interior start");
  c->add_option("--out-system", cen.out_system, "write the centered system");
  c->add_option("--out-transform", cen.out_transform,
                "write the centering transformation");
  c->add_option("--out-mesh", cen.out_mesh,
                "write the centered polyhedron as OBJ");
  c->callback([&] { rc = cmd_center(cen); });

  CapsCenterArgs cc;
  CLI::App* w = app.add_subcommand(
      "caps-center", "Weighted centering of a bare cap collection on S^d");
  w->add_option("input", cc.input, "caps document (bare or full)")->required();
  w->add_option("--weights", cc.weights, "sec | tan | powsec:<k>");
  w->add_option("--tol", cc.tol, "residual tolerance (default 1e-8)");
  w->add_option("--max-iter", cc.max_iter, "iteration budget (default 200)");
  w->add_option("--seed", cc.seed, "nonzero: randomized interior start");
  w->add_option("--out-caps", cc.out_caps, "write the centered caps");
  w->add_option("--out-transform", cc.out_transform,
                "write the centering transformation");
  w->callback([&] { rc = cmd_caps_center(cc); });

  TraceArgs tra;
  CLI::App* t = app.add_subcommand(
      "trace", "Integrate field lines of a center functional");
  t->add_option("input", tra.input, "caps document")->required();
  t->add_option("--spec", tra.spec, "center functional")->required();
  t->add_option("--starts", tra.starts,
                "number of start points (default 5; first is the origin)");
  t->add_option("--seed", tra.seed, "seed for the random starts (default 1)");
  t->add_flag("--backward", tra.backward,
              "integrate against the field (toward source-type zeros)");
  t->add_option("--tol", tra.tol, "residual that counts as a zero");
  t->add_option("--out-csv", tra.out_csv, "CSV output path (default stdout)");
  t->callback([&] { rc = cmd_trace(tra); });

  struct {
    std::string manifest;
    std::string out_csv;
    int workers = 0;
  } bat;
  CLI::App* b = app.add_subcommand(
      "batch", "Run a koebe-batch/1 manifest of centering jobs");
  b->add_option("manifest", bat.manifest, "manifest JSON path")->required();
  b->add_option("--out-csv", bat.out_csv, "results CSV path (default stdout)");
  b->add_option("--workers", bat.workers,
                "worker threads (default: hardware concurrency)");
  b->callback(
      [&] { rc = cli::run_batch(bat.manifest, bat.out_csv, bat.workers); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const hypothesis_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitHypothesis;
  } catch (const not_supported_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNotApplicable;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return rc;
}
