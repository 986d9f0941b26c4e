// Copyright 2026 The peakshave Authors
// SPDX-License-Identifier: Apache-2.0

#include "oracle.hpp"

#include "errors.hpp"

#include <algorithm>
#include <limits>

namespace peakshave {

void enumerate_feasible(const PrefixBounds& bounds, std::size_t cap,
                        const std::function<void(const Grid<int>&)>& visit) {
  const std::size_t C = bounds.converters(), T = bounds.horizon();
  if (C * T > cap)
    throw CapExceededError("oracle cap exceeded: C*T = " + std::to_string(C * T) +
                           " > " + std::to_string(cap));
  if (C == 0 || T == 0) return;

  // need(c,t) = max_{t' >= t} (A(c,t') - t'): a running count p after
  // interval t can still reach every later lower bound iff p - t >= need.
  Grid<std::int64_t> need(C, T);
  for (std::size_t c = 0; c < C; ++c) {
    std::int64_t best = std::numeric_limits<std::int64_t>::min();
    for (std::size_t t = T; t-- > 0;) {
      best = std::max(best, bounds.lower(c, t) - std::int64_t(t));
      need(c, t) = best;
    }
  }

  Grid<int> x(C, T);
  std::vector<std::int64_t> running(C, 0);
  auto descend = [&](auto&& self, std::size_t cell) -> void {
    if (cell == C * T) {
      visit(x);
      return;
    }
    const std::size_t c = cell / T, t = cell % T;
    const std::int64_t before = t == 0 ? 0 : running[c];
    for (int v = 0; v <= 1; ++v) {
      const std::int64_t p = before + v;
      if (p > bounds.upper(c, t) || p - std::int64_t(t) < need(c, t)) continue;
      x(c, t) = v;
      running[c] = p;
      self(self, cell + 1);
    }
    x(c, t) = 0;
    running[c] = before;
  };
  descend(descend, 0);
}

std::vector<Grid<int>> feasible_schedules(const PrefixBounds& bounds, std::size_t cap) {
  std::vector<Grid<int>> out;
  enumerate_feasible(bounds, cap, [&out](const Grid<int>& x) { out.push_back(x); });
  return out;
}

OracleResult exact_solve(const Instance& inst, ObjectiveKind kind, std::size_t cap) {
  ValidationReport report = validate_instance(inst);
  if (!report.passed() && !report.only_zero_electricity())
    throw ValidationError(report.summary());
  const PrefixBounds bounds = compute_prefix_bounds(inst);
  if (inst.converter_count() * inst.horizon > cap)
    throw CapExceededError("oracle cap exceeded: C*T = " +
                           std::to_string(inst.converter_count() * inst.horizon) +
                           " > " + std::to_string(cap));

  OracleResult best;
  bool found = false;
  enumerate_feasible(bounds, cap, [&](const Grid<int>& x) {
    ++best.examined;
    const double v = evaluate_objective(inst, x, kind);
    if (!found || v < best.optimal_value - 1e-12) {
      found = true;
      best.optimal_value = v;
      best.schedule = x;
    }
  });
  if (!found) throw InfeasibleError("no binary schedule meets the buffer bounds");
  return best;
}

}  // namespace peakshave
