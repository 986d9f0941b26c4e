// Copyright 2026 The peakshave Authors
// SPDX-License-Identifier: Apache-2.0

#include "report.hpp"

#include "certificate.hpp"
#include "errors.hpp"

#include <atomic>
#include <cmath>
#include <thread>

namespace peakshave {

using nlohmann::json;

Scalar max_abs_electricity_exact(const Instance& inst) {
  Scalar best = 0;
  for (const auto& c : inst.converters) {
    Scalar a = c.electricity.sign() < 0 ? -c.electricity : c.electricity;
    if (less(best, a)) best = a;
  }
  return best;
}

namespace {

Scalar bound_exact(const Instance& inst, ObjectiveKind kind) {
  Scalar e = max_abs_electricity_exact(inst);
  return kind == ObjectiveKind::Fluctuation ? e + e : e;
}

json id_list(const Instance& inst, const std::vector<std::size_t>& rows) {
  json ids = json::array();
  for (std::size_t r : rows) ids.push_back(inst.converters[r].id);
  return ids;
}

json converter_ids(const Instance& inst) {
  json ids = json::array();
  for (const auto& c : inst.converters) ids.push_back(c.id);
  return ids;
}

json all_objectives(const Instance& inst, const Grid<int>& x) {
  json out = json::object();
  for (auto kind : kAllObjectives)
    out[std::string(to_string(kind))] = evaluate_objective_exact(inst, x, kind).str();
  return out;
}

void require_valid_or_zero_split(const Instance& inst) {
  ValidationReport report = validate_instance(inst);
  if (!report.passed() && !report.only_zero_electricity())
    throw ValidationError(report.summary());
}

std::string violation_kind(FeasibilityViolation::Kind kind) {
  switch (kind) {
    case FeasibilityViolation::Kind::NotBinary: return "not_binary";
    case FeasibilityViolation::Kind::BelowLower: return "below_lower";
    case FeasibilityViolation::Kind::AboveUpper: return "above_upper";
  }
  return "?";
}

// Core-instance rows of x.
Grid<int> core_rows(const Grid<int>& x, const std::vector<std::size_t>& rows) {
  Grid<int> out(rows.size(), x.cols());
  for (std::size_t k = 0; k < rows.size(); ++k)
    for (std::size_t t = 0; t < x.cols(); ++t) out(k, t) = x(rows[k], t);
  return out;
}

// Objective of the base load alone: the value every schedule of an instance
// without controllable load attains.
double base_only_objective(const Instance& inst, ObjectiveKind kind) {
  Instance base = inst;
  base.converters.clear();
  return evaluate_objective(base, Grid<double>(0, inst.horizon), kind);
}

}  // namespace

SolveRun run_solve(const Instance& inst, const RunOptions& options) {
  require_valid_or_zero_split(inst);
  SolveRun run;
  ZeroElectricitySplit split = split_zero_electricity(inst);
  run.split_off = split.zero_index;
  run.core_instance = split.core;
  Grid<int> core_schedule(split.core_index.size(), inst.horizon);
  if (!split.core.converters.empty()) {
    run.core = approximate_solve(split.core, options.kind, options.solve);
    core_schedule = run.core->schedule.x;
    run.lp_bound = run.core->schedule.lp_bound;
  } else {
    run.lp_bound = base_only_objective(inst, options.kind);
  }
  run.schedule = merge_split_schedule(split, core_schedule);
  run.objective = evaluate_objective_exact(inst, run.schedule, options.kind);
  return run;
}

json schedule_to_json(const Grid<int>& x) {
  json rows = json::array();
  for (std::size_t c = 0; c < x.rows(); ++c) {
    json row = json::array();
    for (int v : x.row(c)) row.push_back(v);
    rows.push_back(std::move(row));
  }
  return rows;
}

Grid<int> schedule_from_json(const json& doc) {
  const json* m = &doc;
  if (doc.is_object()) {
    auto it = doc.find("schedule");
    if (it == doc.end()) throw ValidationError("schedule document has no \"schedule\" member");
    m = &*it;
  }
  if (!m->is_array()) throw ValidationError("schedule must be an array of rows");
  const std::size_t C = m->size();
  const std::size_t T = C ? (*m)[0].size() : 0;
  Grid<int> x(C, T);
  for (std::size_t c = 0; c < C; ++c) {
    const json& row = (*m)[c];
    if (!row.is_array() || row.size() != T)
      throw ValidationError("schedule rows must be arrays of equal length");
    for (std::size_t t = 0; t < T; ++t) {
      if (!row[t].is_number_integer())
        throw ValidationError("schedule entries must be integers");
      x(c, t) = row[t].get<int>();
    }
  }
  return x;
}

json solve_report(const Instance& inst, const SolveRun& run, const RunOptions& options) {
  json r;
  r["objective"] = std::string(to_string(options.kind));
  r["converters"] = converter_ids(inst);
  r["schedule"] = schedule_to_json(run.schedule);
  r["objective_value"] = run.objective.str();
  r["lp_bound"] = format_double(run.lp_bound);
  const double gap = run.objective.to_double() - run.lp_bound;
  r["gap"] = format_double(std::fabs(gap) < 1e-12 ? 0.0 : gap);
  r["E"] = max_abs_electricity_exact(inst).str();
  r["error_bound"] = bound_exact(inst, options.kind).str();
  r["objectives"] = all_objectives(inst, run.schedule);
  r["split_off"] = id_list(inst, run.split_off);

  json counters = {{"lp_iterations", 0}, {"line_moves", 0}, {"initial_potential", 0},
                   {"final_potential", 0}, {"class_vertices", 0},
                   {"anchored_steps", 0}, {"fractional_values", 0}};
  json certificate = {{"feasible", check_feasible(inst, run.schedule)}};
  json relaxed = json::array();
  if (run.core) {
    const ApproximateSolution& core = *run.core;
    counters["lp_iterations"] = core.lp_iterations;
    counters["line_moves"] = core.reduction.moves.size();
    counters["initial_potential"] = core.reduction.initial_potential;
    counters["final_potential"] = core.reduction.solution.potential();
    counters["class_vertices"] = core.class_vertices;
    counters["anchored_steps"] = core.anchored_steps;
    counters["fractional_values"] = core.relaxed.fractional_values();

    CertificateCheck check =
        check_certificates(run.core_instance, options.kind, core.schedule.x, core.relaxed);
    certificate["sandwich_violations"] = check.sandwich_violations;
    certificate["max_interval_deviation"] = format_double(check.max_deviation);
    certificate["deviation_bound"] = format_double(check.deviation_bound);
    certificate["gap_within_bound"] = check.gap_ok(kCertificateTolerance);
    certificate["passed"] = check.passed(kCertificateTolerance);

    for (std::size_t c = 0; c < core.relaxed.converters(); ++c) {
      json row = json::array();
      for (double v : core.relaxed.values().row(c)) row.push_back(format_double(v));
      relaxed.push_back(std::move(row));
    }
    if (options.trace) {
      json trace = json::array();
      for (std::size_t i = 0; i < core.reduction.moves.size(); ++i) {
        const LineMove& m = core.reduction.moves[i];
        trace.push_back("move " + std::to_string(i + 1) + ": phi " +
                        std::to_string(m.potential_before) + " -> " +
                        std::to_string(m.potential_after) + ", cycle length " +
                        std::to_string(m.cycle_length) + ", alpha " +
                        format_double(m.alpha));
      }
      r["trace"] = std::move(trace);
    }
  } else {
    certificate["sandwich_violations"] = 0;
    certificate["max_interval_deviation"] = "0";
    certificate["deviation_bound"] = "0";
    certificate["gap_within_bound"] = true;
    certificate["passed"] = certificate["feasible"];
  }
  r["relaxed"] = std::move(relaxed);
  r["certificate"] = std::move(certificate);
  r["counters"] = std::move(counters);
  return r;
}

json oracle_report(const Instance& inst, const OracleResult& result,
                   const RunOptions& options) {
  return {{"objective", std::string(to_string(options.kind))},
          {"converters", converter_ids(inst)},
          {"schedule", schedule_to_json(result.schedule)},
          {"optimal_value", evaluate_objective_exact(inst, result.schedule, options.kind).str()},
          {"examined", result.examined}};
}

VerifyOutcome verify_schedule(const Instance& inst, const Grid<int>& x,
                              const RunOptions& options) {
  require_valid_or_zero_split(inst);
  require_shape(x, inst.converter_count(), inst.horizon, "verify");
  VerifyOutcome out;
  json& r = out.report;
  r["objective"] = std::string(to_string(options.kind));

  json violations = json::array();
  auto found = feasibility_violations(inst, x);
  for (const auto& v : found)
    violations.push_back({{"converter", inst.converters[v.converter].id},
                          {"t", v.index + 1},
                          {"kind", violation_kind(v.kind)}});
  r["feasible"] = found.empty();
  r["violations"] = std::move(violations);

  const bool binary = std::none_of(found.begin(), found.end(), [](const auto& v) {
    return v.kind == FeasibilityViolation::Kind::NotBinary;
  });
  ZeroElectricitySplit split = split_zero_electricity(inst);
  bool certificates_ok = true;
  if (binary && !split.core.converters.empty()) {
    const PrefixBounds bounds = reformulate(split.core);
    Relaxation relaxation = build_relaxation(split.core, bounds, options.kind, options.solve.form);
    LpSolution lp = solve_lp(relaxation.lp, options.solve.simplex);
    if (lp.status == LpStatus::Infeasible) throw InfeasibleError("the relaxation has no feasible point");
    if (lp.status != LpStatus::Optimal)
      throw InternalError("LP solve ended with status " + std::string(to_string(lp.status)));
    RelaxedSolution y = extract_relaxed(lp, relaxation.layout, options.solve.snap_tol);
    CertificateCheck check =
        check_certificates(split.core, options.kind, core_rows(x, split.core_index), y);
    r["sandwich_violations"] = check.sandwich_violations;
    r["max_interval_deviation"] = format_double(check.max_deviation);
    r["deviation_bound"] = format_double(check.deviation_bound);
    r["objective_value"] = evaluate_objective_exact(inst, x, options.kind).str();
    r["lp_bound"] = format_double(check.lp_bound);
    r["gap"] = format_double(check.gap);
    r["error_bound"] = bound_exact(inst, options.kind).str();
    r["gap_within_bound"] = check.gap_ok(kCertificateTolerance);
    certificates_ok = check.sandwich_violations == 0 &&
                      check.deviation_ok(kCertificateTolerance) &&
                      check.gap_ok(kCertificateTolerance);
  } else if (!binary) {
    certificates_ok = false;
  }
  out.passed = found.empty() && certificates_ok;
  r["passed"] = out.passed;
  return out;
}

CompareOutcome compare_instance(const Instance& inst, const RunOptions& options) {
  SolveRun run = run_solve(inst, options);
  OracleResult oracle = exact_solve(inst, options.kind, options.oracle_cap);
  const Scalar oracle_value = evaluate_objective_exact(inst, oracle.schedule, options.kind);
  const Scalar bound = bound_exact(inst, options.kind);
  const Scalar gap = run.objective - oracle_value;

  CompareOutcome out;
  out.bound_respected = less_equal(gap, bound) ||
                        gap.to_double() <= bound.to_double() + kCertificateTolerance;
  out.report = {{"objective", std::string(to_string(options.kind))},
                {"approximate_value", run.objective.str()},
                {"oracle_value", oracle_value.str()},
                {"lp_bound", format_double(run.lp_bound)},
                {"gap", gap.str()},
                {"bound", bound.str()},
                {"bound_respected", out.bound_respected},
                {"examined", oracle.examined},
                {"schedule", schedule_to_json(run.schedule)},
                {"oracle_schedule", schedule_to_json(oracle.schedule)}};
  return out;
}

CompareOutcome compare_batch(std::size_t converters, std::size_t horizon,
                             std::uint64_t seed, const GenProfile& profile,
                             std::size_t count, unsigned threads,
                             const RunOptions& options) {
  std::vector<json> entries(count);
  std::vector<char> respected(count, 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      const std::uint64_t s = seed + i;
      json entry = {{"seed", s}};
      try {
        Instance inst = generate_instance(converters, horizon, s, profile).instance;
        CompareOutcome one = compare_instance(inst, options);
        for (const char* key : {"approximate_value", "oracle_value", "gap", "bound",
                                "bound_respected"})
          entry[key] = one.report[key];
        respected[i] = one.bound_respected;
      } catch (const std::exception& e) {
        entry["error"] = e.what();
      }
      entries[i] = std::move(entry);
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = unsigned(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < threads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  CompareOutcome out;
  out.bound_respected = std::all_of(respected.begin(), respected.end(),
                                    [](char v) { return v != 0; });
  std::size_t violations = std::size_t(std::count(respected.begin(), respected.end(), 0));
  out.report = {{"objective", std::string(to_string(options.kind))},
                {"C", converters},
                {"T", horizon},
                {"count", count},
                {"instances", entries},
                {"bound_respected", out.bound_respected},
                {"violations", violations}};
  return out;
}

}  // namespace peakshave
