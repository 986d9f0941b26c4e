// Copyright 2026 The peakshave Authors
// SPDX-License-Identifier: Apache-2.0

#include "peakshave/peakshave.h"

#include "errors.hpp"
#include "instance_io.hpp"
#include "relaxation.hpp"
#include "report.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

struct ps_instance {
  peakshave::Instance inst;
};

struct ps_solution {
  peakshave::SolveRun run;
  nlohmann::json report;
};

namespace {

thread_local std::string last_error;

ps_status fail(ps_status status, const char* what) {
  last_error = what;
  return status;
}

// Runs `body` and turns exceptions into status codes.
template <typename F>
ps_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const peakshave::ValidationError& e) {
    return fail(PS_VALIDATION, e.what());
  } catch (const peakshave::InfeasibleError& e) {
    return fail(PS_INFEASIBLE, e.what());
  } catch (const peakshave::CapExceededError& e) {
    return fail(PS_CAP_EXCEEDED, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(PS_VALIDATION, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(PS_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(PS_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(PS_INTERNAL, e.what());
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void put(char** out, const nlohmann::json& doc) {
  if (out) *out = dup(doc.dump(2) + "\n");
}

peakshave::RunOptions run_options(const ps_options* options) {
  ps_options o;
  ps_options_default(&o);
  if (options) o = *options;
  peakshave::RunOptions r;
  switch (o.objective) {
    case PS_BASIC: r.kind = peakshave::ObjectiveKind::Basic; break;
    case PS_MAXIMAL: r.kind = peakshave::ObjectiveKind::Maximal; break;
    case PS_ABSOLUTE: r.kind = peakshave::ObjectiveKind::Absolute; break;
    case PS_FLUCTUATION: r.kind = peakshave::ObjectiveKind::Fluctuation; break;
    default: throw std::invalid_argument("unknown objective");
  }
  if (!(o.snap_tol > 0 && o.snap_tol < 0.5)) throw std::invalid_argument("snap_tol must lie in (0, 0.5)");
  if (!(o.lp_tol > 0 && o.lp_tol < 1e-3)) throw std::invalid_argument("lp_tol must lie in (0, 1e-3)");
  r.solve.snap_tol = o.snap_tol;
  r.solve.simplex.feasibility_tol = o.lp_tol;
  r.solve.simplex.optimality_tol = o.lp_tol;
  r.oracle_cap = o.oracle_cap;
  r.trace = o.trace != 0;
  return r;
}

peakshave::GenProfile profile_of(const ps_gen_params& p) {
  peakshave::GenProfile g;
  g.base_load = p.base_load == PS_BASE_DIURNAL ? peakshave::GenProfile::BaseLoad::Diurnal
                                               : peakshave::GenProfile::BaseLoad::Zero;
  g.positive_only = p.positive_only != 0;
  g.force_run = p.force_run != 0;
  return g;
}

void check_gen(const ps_gen_params* p) {
  if (!p) throw std::invalid_argument("null generator parameters");
  if (p->converters == 0 || p->horizon == 0)
    throw std::invalid_argument("generator needs C >= 1 and T >= 1");
}

#define PS_REQUIRE(cond, msg) \
  do {                        \
    if (!(cond)) return fail(PS_INVALID_ARGUMENT, msg); \
  } while (0)

}  // namespace

extern "C" {

const char* ps_version(void) { return PEAKSHAVE_VERSION; }

const char* ps_status_string(ps_status status) {
  switch (status) {
    case PS_OK: return "ok";
    case PS_VALIDATION: return "validation failure";
    case PS_INFEASIBLE: return "infeasible";
    case PS_CAP_EXCEEDED: return "oracle cap exceeded";
    case PS_INTERNAL: return "internal error";
    case PS_INVALID_ARGUMENT: return "invalid argument";
  }
  return "unknown status";
}

const char* ps_last_error(void) { return last_error.c_str(); }

void ps_string_free(char* s) { std::free(s); }

void ps_options_default(ps_options* options) {
  if (!options) return;
  options->objective = PS_MAXIMAL;
  options->snap_tol = peakshave::kSnapTolerance;
  options->lp_tol = peakshave::SimplexOptions{}.feasibility_tol;
  options->oracle_cap = peakshave::kDefaultOracleCap;
  options->trace = 0;
}

int ps_parse_objective(const char* name, ps_objective* out) {
  if (!name || !out) return 0;
  auto kind = peakshave::parse_objective(name);
  if (!kind) return 0;
  *out = static_cast<ps_objective>(static_cast<int>(*kind));
  return 1;
}

ps_status ps_instance_parse(const char* json, ps_instance** out) {
  PS_REQUIRE(json && out, "null argument");
  *out = nullptr;
  return guarded([&] {
    *out = new ps_instance{peakshave::parse_instance(json)};
    return PS_OK;
  });
}

ps_status ps_instance_generate(const ps_gen_params* params, ps_instance** out) {
  PS_REQUIRE(out, "null argument");
  *out = nullptr;
  return guarded([&] {
    check_gen(params);
    auto gen = peakshave::generate_instance(params->converters, params->horizon,
                                            params->seed, profile_of(*params));
    *out = new ps_instance{std::move(gen.instance)};
    return PS_OK;
  });
}

ps_status ps_instance_to_json(const ps_instance* inst, char** out) {
  PS_REQUIRE(inst && out, "null argument");
  return guarded([&] {
    put(out, peakshave::instance_to_json(inst->inst));
    return PS_OK;
  });
}

ps_status ps_instance_validate(const ps_instance* inst, char** report) {
  PS_REQUIRE(inst, "null instance");
  return guarded([&] {
    auto v = peakshave::validate_instance(inst->inst);
    nlohmann::json issues = nlohmann::json::array();
    for (const auto& issue : v.issues) {
      nlohmann::json j = {{"message", issue.message}};
      if (issue.converter) j["converter"] = inst->inst.converters.at(*issue.converter).id;
      if (issue.interval) j["t"] = *issue.interval + 1;
      issues.push_back(std::move(j));
    }
    put(report, {{"passed", v.passed()},
                 {"only_zero_electricity", !v.passed() && v.only_zero_electricity()},
                 {"issues", std::move(issues)}});
    if (v.passed()) return PS_OK;
    last_error = v.summary();
    return PS_VALIDATION;
  });
}

size_t ps_instance_converters(const ps_instance* inst) {
  return inst ? inst->inst.converter_count() : 0;
}

size_t ps_instance_horizon(const ps_instance* inst) { return inst ? inst->inst.horizon : 0; }

void ps_instance_free(ps_instance* inst) { delete inst; }

ps_status ps_solve(const ps_instance* inst, const ps_options* options, ps_solution** out) {
  PS_REQUIRE(inst && out, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto opts = run_options(options);
    auto sol = std::make_unique<ps_solution>();
    sol->run = peakshave::run_solve(inst->inst, opts);
    sol->report = peakshave::solve_report(inst->inst, sol->run, opts);
    *out = sol.release();
    return PS_OK;
  });
}

double ps_solution_objective(const ps_solution* sol) {
  return sol ? sol->run.objective.to_double() : 0.0;
}

double ps_solution_lp_bound(const ps_solution* sol) { return sol ? sol->run.lp_bound : 0.0; }

double ps_solution_gap(const ps_solution* sol) {
  return sol ? sol->run.objective.to_double() - sol->run.lp_bound : 0.0;
}

int ps_solution_entry(const ps_solution* sol, size_t converter, size_t t) {
  if (!sol) return -1;
  const auto& x = sol->run.schedule;
  if (converter >= x.rows() || t >= x.cols()) return -1;
  return x(converter, t);
}

ps_status ps_solution_report(const ps_solution* sol, char** out) {
  PS_REQUIRE(sol && out, "null argument");
  return guarded([&] {
    put(out, sol->report);
    return PS_OK;
  });
}

void ps_solution_free(ps_solution* sol) { delete sol; }

ps_status ps_oracle(const ps_instance* inst, const ps_options* options, char** report) {
  PS_REQUIRE(inst, "null instance");
  return guarded([&] {
    auto opts = run_options(options);
    auto result = peakshave::exact_solve(inst->inst, opts.kind, opts.oracle_cap);
    put(report, peakshave::oracle_report(inst->inst, result, opts));
    return PS_OK;
  });
}

ps_status ps_verify(const ps_instance* inst, const char* schedule_json,
                    const ps_options* options, char** report) {
  PS_REQUIRE(inst && schedule_json, "null argument");
  return guarded([&] {
    auto opts = run_options(options);
    auto x = peakshave::schedule_from_json(nlohmann::json::parse(schedule_json));
    if (x.rows() != inst->inst.converter_count() || x.cols() != inst->inst.horizon)
      throw peakshave::ValidationError("schedule shape does not match the instance");
    auto outcome = peakshave::verify_schedule(inst->inst, x, opts);
    put(report, outcome.report);
    if (outcome.passed) return PS_OK;
    last_error = "schedule failed verification";
    return PS_VALIDATION;
  });
}

ps_status ps_compare(const ps_instance* inst, const ps_options* options, char** report) {
  PS_REQUIRE(inst, "null instance");
  return guarded([&] {
    auto outcome = peakshave::compare_instance(inst->inst, run_options(options));
    put(report, outcome.report);
    if (outcome.bound_respected) return PS_OK;
    last_error = "approximation exceeded the error bound";
    return PS_VALIDATION;
  });
}

ps_status ps_compare_batch(const ps_gen_params* params, size_t count, unsigned threads,
                           const ps_options* options, char** report) {
  return guarded([&] {
    check_gen(params);
    auto outcome = peakshave::compare_batch(params->converters, params->horizon,
                                            params->seed, profile_of(*params), count,
                                            threads, run_options(options));
    put(report, outcome.report);
    if (outcome.bound_respected) return PS_OK;
    last_error = "at least one instance exceeded the error bound or failed";
    return PS_VALIDATION;
  });
}

ps_status ps_dump_lp(const ps_instance* inst, const ps_options* options, char** out) {
  PS_REQUIRE(inst && out, "null argument");
  return guarded([&] {
    auto opts = run_options(options);
    auto v = peakshave::validate_instance(inst->inst);
    if (!v.passed()) throw peakshave::ValidationError(v.summary());
    auto bounds = peakshave::reformulate(inst->inst);
    auto relaxation = peakshave::build_relaxation(inst->inst, bounds, opts.kind);
    *out = dup(relaxation.lp.to_text());
    return PS_OK;
  });
}

}  // extern "C"
