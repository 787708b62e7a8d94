// SPDX-License-Identifier: MIT
//
// Batch runner: executes a "koebe-batch/1" manifest of centering jobs on a
// worker pool and writes one CSV row per job. Job failures (bad inputs,
// refused hypotheses, non-convergence) land in their row; the run itself
// only fails when the manifest cannot be read.

#pragma once

#include <string>

namespace koebe::cli {

// Returns the process exit code: 0 when the manifest ran (inspect the CSV
// for per-job outcomes), 2 when the manifest itself is unusable.
// `out_csv` empty or "-" writes to stdout. `workers` <= 0 picks the
// hardware concurrency, capped by the job count.
int run_batch(const std::string& manifest_path, const std::string& out_csv,
              int workers);

} // namespace koebe::cli
