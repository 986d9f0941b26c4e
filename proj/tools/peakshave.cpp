// Copyright 2026 The peakshave Authors
// SPDX-License-Identifier: Apache-2.0

// peakshave: generate, solve, exactly solve, verify and compare heat
// converter scheduling instances. Exit codes: 0 success, 1 validation or
// verification failure, 2 infeasible, 3 oracle cap exceeded, 4 internal.

#include <peakshave/peakshave.h>

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

namespace {

struct Config {
  std::string objective = "maximal";
  double snap_tol = 0.0;
  double lp_tol = 0.0;
  std::size_t oracle_cap = 0;
  bool trace = false;
  std::string output;

  std::string instance_path;
  std::string schedule_path;
  std::string dump_lp;

  std::size_t converters = 2;
  std::size_t horizon = 4;
  std::uint64_t seed = 1;
  std::string profile = "zero";
  bool positive_only = false;
  bool force_run = false;
  std::size_t batch = 0;
  unsigned threads = 0;
};

struct Failure {
  int code;
  std::string message;
};

using CString = std::unique_ptr<char, decltype(&ps_string_free)>;
using InstanceHandle = std::unique_ptr<ps_instance, decltype(&ps_instance_free)>;

CString own(char* s) { return CString(s, &ps_string_free); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{1, "cannot read " + path};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const char* text) {
  if (path.empty() || path == "-") {
    std::fputs(text, stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Failure{1, "cannot write " + path};
}

void check(ps_status status) {
  if (status != PS_OK) throw Failure{int(status) == PS_INVALID_ARGUMENT ? 1 : int(status),
                                     ps_last_error()};
}

ps_options options_of(const Config& cfg) {
  ps_options o;
  ps_options_default(&o);
  if (!ps_parse_objective(cfg.objective.c_str(), &o.objective))
    throw Failure{1, "unknown objective " + cfg.objective};
  if (cfg.snap_tol > 0) o.snap_tol = cfg.snap_tol;
  if (cfg.lp_tol > 0) o.lp_tol = cfg.lp_tol;
  if (cfg.oracle_cap > 0) o.oracle_cap = cfg.oracle_cap;
  o.trace = cfg.trace ? 1 : 0;
  return o;
}

ps_gen_params gen_params(const Config& cfg) {
  ps_gen_params p{};
  p.converters = cfg.converters;
  p.horizon = cfg.horizon;
  p.seed = cfg.seed;
  p.base_load = cfg.profile == "diurnal" ? PS_BASE_DIURNAL : PS_BASE_ZERO;
  p.positive_only = cfg.positive_only;
  p.force_run = cfg.force_run;
  return p;
}

InstanceHandle load_instance(const std::string& path) {
  ps_instance* raw = nullptr;
  const std::string text = read_file(path);
  check(ps_instance_parse(text.c_str(), &raw));
  return InstanceHandle(raw, &ps_instance_free);
}

// Writes the report (when there is one) before turning a failing status into
// an exit code, so verify and compare failures still show their details.
void finish(ps_status status, char* report, const Config& cfg) {
  CString owned = own(report);
  if (owned) write_output(cfg.output, owned.get());
  check(status);
}

void run_gen(const Config& cfg) {
  ps_gen_params p = gen_params(cfg);
  ps_instance* raw = nullptr;
  check(ps_instance_generate(&p, &raw));
  InstanceHandle inst(raw, &ps_instance_free);
  char* text = nullptr;
  check(ps_instance_to_json(inst.get(), &text));
  finish(PS_OK, text, cfg);
}

void run_solve(const Config& cfg) {
  InstanceHandle inst = load_instance(cfg.instance_path);
  ps_options o = options_of(cfg);
  if (!cfg.dump_lp.empty()) {
    char* lp = nullptr;
    check(ps_dump_lp(inst.get(), &o, &lp));
    CString owned = own(lp);
    write_output(cfg.dump_lp, owned.get());
  }
  ps_solution* sol = nullptr;
  check(ps_solve(inst.get(), &o, &sol));
  std::unique_ptr<ps_solution, decltype(&ps_solution_free)> guard(sol, &ps_solution_free);
  char* report = nullptr;
  check(ps_solution_report(sol, &report));
  finish(PS_OK, report, cfg);
}

void run_oracle(const Config& cfg) {
  InstanceHandle inst = load_instance(cfg.instance_path);
  ps_options o = options_of(cfg);
  char* report = nullptr;
  ps_status status = ps_oracle(inst.get(), &o, &report);
  finish(status, report, cfg);
}

void run_verify(const Config& cfg) {
  InstanceHandle inst = load_instance(cfg.instance_path);
  ps_options o = options_of(cfg);
  const std::string schedule = read_file(cfg.schedule_path);
  char* report = nullptr;
  ps_status status = ps_verify(inst.get(), schedule.c_str(), &o, &report);
  finish(status, report, cfg);
}

void run_compare(const Config& cfg) {
  ps_options o = options_of(cfg);
  char* report = nullptr;
  ps_status status;
  if (cfg.batch > 0) {
    ps_gen_params p = gen_params(cfg);
    status = ps_compare_batch(&p, cfg.batch, cfg.threads, &o, &report);
  } else {
    if (cfg.instance_path.empty()) throw Failure{1, "compare needs an instance or --batch"};
    InstanceHandle inst = load_instance(cfg.instance_path);
    status = ps_compare(inst.get(), &o, &report);
  }
  finish(status, report, cfg);
}

void add_run_flags(CLI::App* cmd, Config& cfg) {
  cmd->add_option("--objective", cfg.objective, "basic|maximal|absolute|fluctuation")
      ->check(CLI::IsMember({"basic", "maximal", "absolute", "fluctuation"}));
  cmd->add_option("--snap-tol", cfg.snap_tol, "integrality snap for relaxed values");
  cmd->add_option("--lp-tol", cfg.lp_tol, "simplex tolerance");
  cmd->add_option("--oracle-cap", cfg.oracle_cap, "largest C*T the oracle enumerates");
  cmd->add_option("-o,--output", cfg.output, "report path (default stdout)");
}

void add_gen_flags(CLI::App* cmd, Config& cfg) {
  cmd->add_option("-C,--converters", cfg.converters)->check(CLI::PositiveNumber);
  cmd->add_option("-T,--horizon", cfg.horizon)->check(CLI::PositiveNumber);
  cmd->add_option("--seed", cfg.seed);
  cmd->add_option("--profile", cfg.profile)->check(CLI::IsMember({"zero", "diurnal"}));
  cmd->add_flag("--positive-only", cfg.positive_only, "draw E_c from {1,2,3}");
  cmd->add_flag("--force-run", cfg.force_run, "every converter must run at least once");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Peak-shaving scheduler for heat converters with thermal buffers"};
  app.set_version_flag("--version", ps_version());
  app.require_subcommand(1);
  Config cfg;

  auto* gen = app.add_subcommand("gen", "generate a feasible random instance");
  add_gen_flags(gen, cfg);
  gen->add_option("-o,--output", cfg.output, "instance path (default stdout)");

  auto* solve = app.add_subcommand("solve", "LP relaxation plus rounding");
  solve->add_option("instance", cfg.instance_path)->required();
  add_run_flags(solve, cfg);
  solve->add_flag("--trace", cfg.trace, "include the line moves in the report");
  solve->add_option("--dump-lp", cfg.dump_lp, "write the relaxation as LP text");

  auto* oracle = app.add_subcommand("oracle", "exhaustive optimum of a small instance");
  oracle->add_option("instance", cfg.instance_path)->required();
  add_run_flags(oracle, cfg);

  auto* verify = app.add_subcommand("verify", "check a schedule and its certificates");
  verify->add_option("instance", cfg.instance_path)->required();
  verify->add_option("schedule", cfg.schedule_path)->required();
  add_run_flags(verify, cfg);

  auto* compare = app.add_subcommand("compare", "approximate versus exact objective");
  compare->add_option("instance", cfg.instance_path);
  add_run_flags(compare, cfg);
  add_gen_flags(compare, cfg);
  compare->add_option("--batch", cfg.batch, "compare N generated instances (seed, seed+1, ...)");
  compare->add_option("--threads", cfg.threads, "batch workers (0 = all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*gen) run_gen(cfg);
    else if (*solve) run_solve(cfg);
    else if (*oracle) run_oracle(cfg);
    else if (*verify) run_verify(cfg);
    else if (*compare) run_compare(cfg);
  } catch (const Failure& f) {
    std::cerr << "peakshave: " << f.message << '\n';
    return f.code;
  }
  return 0;
}
