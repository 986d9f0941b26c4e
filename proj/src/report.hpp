// Copyright 2026 The peakshave Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "instance.hpp"
#include "instance_io.hpp"
#include "oracle.hpp"
#include "rounding.hpp"

#include <json.hpp>

#include <cstddef>
#include <cstdint>

namespace peakshave {

struct RunOptions {
  ObjectiveKind kind = ObjectiveKind::Maximal;
  SolveOptions solve;
  std::size_t oracle_cap = kDefaultOracleCap;
  bool trace = false;
};

// approximate_solve on the instance with zero-electricity converters split
// off and scheduled independently.
struct SolveRun {
  Grid<int> schedule;          // full instance, original converter order
  Scalar objective;            // m^A, exact when the instance is
  double lp_bound = 0.0;
  std::vector<std::size_t> split_off;
  std::optional<ApproximateSolution> core;  // absent if every E_c = 0
  Instance core_instance;
};

SolveRun run_solve(const Instance& inst, const RunOptions& options);

nlohmann::json solve_report(const Instance& inst, const SolveRun& run,
                            const RunOptions& options);
nlohmann::json oracle_report(const Instance& inst, const OracleResult& result,
                             const RunOptions& options);

struct VerifyOutcome {
  nlohmann::json report;
  bool passed = false;
};

// Re-derives the relaxation of the instance and checks feasibility plus the
// rounding certificates for `x`.
VerifyOutcome verify_schedule(const Instance& inst, const Grid<int>& x,
                              const RunOptions& options);

// Accepts a bare matrix or an object with a "schedule" member (a solve or
// oracle report). Throws ValidationError.
Grid<int> schedule_from_json(const nlohmann::json& doc);
nlohmann::json schedule_to_json(const Grid<int>& x);

struct CompareOutcome {
  nlohmann::json report;
  bool bound_respected = false;
};

CompareOutcome compare_instance(const Instance& inst, const RunOptions& options);

// Generates `count` instances with seeds seed, seed+1, ... and compares each;
// `threads` workers (0 = hardware concurrency). Per-instance failures are
// recorded in the report rather than thrown.
CompareOutcome compare_batch(std::size_t converters, std::size_t horizon,
                             std::uint64_t seed, const GenProfile& profile,
                             std::size_t count, unsigned threads,
                             const RunOptions& options);

Scalar max_abs_electricity_exact(const Instance& inst);

}  // namespace peakshave
