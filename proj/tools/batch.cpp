// SPDX-License-Identifier: MIT
#include "batch.hpp"

#include <atomic>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "koebe/errors.hpp"
#include "koebe/json_io.hpp"

namespace koebe::cli {
namespace {

using nlohmann::json;

struct Job {
  std::string name;
  std::string input;        // path to a caps document, or
  std::string solid;        // a canonical solid name
  std::string spec = "cm0";
  std::uint64_t seed = 0;
  double rapidity = 0.0;    // > 0: apply a random valid isometry
  double tol = 1e-8;
  int max_iter = 200;
  SolveMethod method = SolveMethod::Auto;
};

struct Row {
  Job job;
  std::string status;
  int iterations = 0;
  std::optional<double> residual;
  double wall_seconds = 0.0;
  std::string message;
};

SolveMethod parse_method(const std::string& text) {
  if (text == "auto") return SolveMethod::Auto;
  if (text == "newton") return SolveMethod::Newton;
  if (text == "flow") return SolveMethod::Flow;
  throw parse_error("unknown solver \"" + text + "\" (auto, newton, flow)");
}

template <typename T>
T field_or(const json& j, const json& defaults, const std::string& key,
           T fallback) {
  if (j.contains(key)) return j.at(key).get<T>();
  if (defaults.contains(key)) return defaults.at(key).get<T>();
  return fallback;
}

std::vector<Job> parse_manifest(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw parse_error(std::string("invalid manifest JSON: ") + e.what());
  }
  if (!j.is_object() || j.value("format", "") != "koebe-batch/1")
    throw parse_error("manifest must be an object with format \"koebe-batch/1\"");
  if (!j.contains("jobs") || !j.at("jobs").is_array() || j.at("jobs").empty())
    throw parse_error("manifest needs a non-empty \"jobs\" array");
  const json defaults = j.value("defaults", json::object());
  const std::uint64_t base_seed = j.value("seed", std::uint64_t{1});

  std::vector<Job> jobs;
  std::uint64_t index = 0;
  for (const json& entry : j.at("jobs")) {
    if (!entry.is_object()) throw parse_error("each job must be an object");
    Job job;
    job.input = field_or<std::string>(entry, defaults, "input", "");
    job.solid = field_or<std::string>(entry, defaults, "solid", "");
    if (job.input.empty() == job.solid.empty())
      throw parse_error("job " + std::to_string(index) +
                        ": exactly one of \"input\" or \"solid\" is required");
    job.spec = field_or<std::string>(entry, defaults, "spec", "cm0");
    // Deterministic per-job seeds: explicit, else base seed plus position.
    job.seed = entry.contains("seed") ? entry.at("seed").get<std::uint64_t>()
                                      : base_seed + index;
    job.rapidity = field_or<double>(entry, defaults, "rapidity",
                                    job.solid.empty() ? 0.0 : 1.0);
    job.tol = field_or<double>(entry, defaults, "tol", 1e-8);
    job.max_iter = field_or<int>(entry, defaults, "max_iter", 200);
    job.method =
        parse_method(field_or<std::string>(entry, defaults, "solver", "auto"));
    job.name = entry.contains("name")
                   ? entry.at("name").get<std::string>()
                   : (job.solid.empty() ? job.input : job.solid) + "/" +
                         job.spec + "#" + std::to_string(index);
    jobs.push_back(std::move(job));
    ++index;
  }
  return jobs;
}

Row run_job(const Job& job) {
  Row row;
  row.job = job;
  try {
    SolveOptions opts;
    opts.tol_residual = job.tol;
    opts.max_iter = job.max_iter;
    opts.method = job.method;
    const CenterSpec spec = CenterSpec::parse(job.spec);

    SolveReport report;
    if (!job.solid.empty()) {
      CapSystem sys = make_canonical(parse_solid(job.solid));
      if (job.rapidity > 0.0)
        sys = random_valid_image(sys, job.seed, job.rapidity).system;
      report = solve(sys, spec, opts);
    } else {
      const CapsDocument doc = caps_from_json(read_text_file(job.input));
      if (doc.bare()) {
        if (spec.kind != CenterKind::WeightedCaps)
          throw parse_error("bare cap documents only take weight-family specs");
        report = solve_weighted(doc.vertex_caps, spec.family, spec.power, opts);
      } else {
        report = solve(doc.to_system(), spec, opts);
      }
    }
    row.status = to_string(report.status);
    row.iterations = report.iterations;
    row.residual = report.residual();
    row.wall_seconds = report.wall_seconds;
    row.message = report.message;
  } catch (const error& e) {
    row.status = "Error";
    row.message = e.what();
  }
  return row;
}

} // namespace

int run_batch(const std::string& manifest_path, const std::string& out_csv,
              int workers) {
  std::vector<Job> jobs;
  try {
    jobs = parse_manifest(read_text_file(manifest_path));
  } catch (const error& e) {
    std::cerr << "batch: " << e.what() << '\n';
    return 2;
  }

  if (workers <= 0)
    workers = static_cast<int>(std::thread::hardware_concurrency());
  workers = std::max(1, std::min<int>(workers, static_cast<int>(jobs.size())));

  std::vector<Row> rows(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < jobs.size();
         i = next.fetch_add(1))
      rows[i] = run_job(jobs[i]);
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::ostringstream csv;
  csv << "job,name,source,spec,seed,status,iterations,residual,"
         "wall_seconds,message\n";
  int converged = 0, failed = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Row& r = rows[i];
    csv << i << ',' << csv_escape(r.job.name) << ','
        << csv_escape(r.job.input.empty() ? r.job.solid : r.job.input) << ','
        << r.job.spec << ',' << r.job.seed << ',' << r.status << ','
        << r.iterations << ',';
    if (r.residual) csv << double_text(*r.residual);
    csv << ',' << double_text(r.wall_seconds) << ',' << csv_escape(r.message)
        << '\n';
    if (r.status == "Converged") ++converged;
    if (r.status == "Error") ++failed;
  }

  if (out_csv.empty() || out_csv == "-") {
    std::cout << csv.str();
  } else {
    try {
      write_text_file(out_csv, csv.str());
    } catch (const error& e) {
      std::cerr << "batch: " << e.what() << '\n';
      return 2;
    }
  }
  std::cerr << "batch: " << jobs.size() << " jobs on " << workers
            << " workers, " << converged << " converged, " << failed
            << " errored\n";
  return 0;
}

} // namespace koebe::cli
