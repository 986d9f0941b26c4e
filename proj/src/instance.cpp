// Copyright 2026 The peakshave Authors
// SPDX-License-Identifier: Apache-2.0

#include "instance.hpp"

#include "errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace peakshave {

std::vector<double> Instance::electricity() const {
  std::vector<double> e;
  e.reserve(converters.size());
  for (const auto& c : converters) e.push_back(c.electricity.to_double());
  return e;
}

double Instance::max_abs_electricity() const {
  double e = 0.0;
  for (const auto& c : converters)
    e = std::max(e, std::fabs(c.electricity.to_double()));
  return e;
}

std::string_view to_string(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::Basic: return "basic";
    case ObjectiveKind::Maximal: return "maximal";
    case ObjectiveKind::Absolute: return "absolute";
    case ObjectiveKind::Fluctuation: return "fluctuation";
  }
  return "?";
}

std::optional<ObjectiveKind> parse_objective(std::string_view name) {
  for (auto kind : kAllObjectives)
    if (to_string(kind) == name) return kind;
  return std::nullopt;
}

double error_bound(const Instance& inst, ObjectiveKind kind) {
  double e = inst.max_abs_electricity();
  return kind == ObjectiveKind::Fluctuation ? 2.0 * e : e;
}

bool ValidationReport::only_zero_electricity() const {
  return !issues.empty() &&
         std::all_of(issues.begin(), issues.end(), [](const auto& i) {
           return i.code == ValidationIssue::Code::ZeroElectricity;
         });
}

std::string ValidationReport::summary() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < issues.size(); ++i) {
    if (i) out << "; ";
    out << issues[i].message;
  }
  return out.str();
}

ValidationReport validate_instance(const Instance& inst) {
  using Code = ValidationIssue::Code;
  ValidationReport report;
  auto add = [&](Code code, std::optional<std::size_t> c,
                 std::optional<std::size_t> t, std::string msg) {
    report.issues.push_back({code, c, t, std::move(msg)});
  };
  const std::size_t T = inst.horizon;
  if (T == 0) add(Code::EmptyHorizon, {}, {}, "horizon T must be at least 1");
  if (inst.converters.empty())
    add(Code::NoConverters, {}, {}, "instance has no converters");
  if (inst.base_load.size() != T)
    add(Code::BaseLoadLength, {}, {},
        "base_load has " + std::to_string(inst.base_load.size()) +
            " entries, expected " + std::to_string(T));

  for (std::size_t c = 0; c < inst.converters.size(); ++c) {
    const Converter& conv = inst.converters[c];
    const std::string who = "converter '" + conv.id + "'";
    if (conv.electricity.is_zero())
      add(Code::ZeroElectricity, c, {},
          who + " has E = 0; it does not affect any objective, split it off "
                "and schedule it independently");
    if (conv.heat.sign() <= 0)
      add(Code::NonPositiveHeat, c, {}, who + " has H <= 0");
    if (conv.demand.size() != T) {
      add(Code::DemandLength, c, {},
          who + " demand has " + std::to_string(conv.demand.size()) +
              " entries, expected " + std::to_string(T));
    } else {
      for (std::size_t t = 0; t < T; ++t)
        if (conv.demand[t].sign() < 0)
          add(Code::NegativeDemand, c, t,
              who + " has negative demand at t=" + std::to_string(t + 1));
    }
    if (conv.soc_lower.size() != T + 1 || conv.soc_upper.size() != T + 1) {
      add(Code::BoundLength, c, {},
          who + " soc_lower/soc_upper must have T+1 = " +
              std::to_string(T + 1) + " entries");
      continue;
    }
    for (std::size_t t = 0; t <= T; ++t)
      if (!less_equal(conv.soc_lower[t], conv.soc_upper[t]))
        add(Code::BoundsCrossed, c, t,
            who + " has soc_lower > soc_upper at t=" + std::to_string(t + 1));
    if (!equal(conv.soc_lower[0], conv.soc_upper[0]))
      add(Code::InitialChargeNotFixed, c, 0,
          who + ": initial SoC not fixed (soc_lower[1] != soc_upper[1])");
  }
  return report;
}

std::optional<std::pair<std::size_t, std::size_t>>
PrefixBounds::first_empty_cell() const {
  for (std::size_t c = 0; c < converters(); ++c)
    for (std::size_t t = 0; t < horizon(); ++t)
      if (lower(c, t) > upper(c, t)) return std::pair{c, t};
  return std::nullopt;
}

bool PrefixBounds::admits(const Grid<int>& x) const {
  if (!x.same_shape(converters(), horizon())) return false;
  for (std::size_t c = 0; c < converters(); ++c) {
    std::int64_t running = 0;
    for (std::size_t t = 0; t < horizon(); ++t) {
      int v = x(c, t);
      if (v != 0 && v != 1) return false;
      running += v;
      if (running < lower(c, t) || running > upper(c, t)) return false;
    }
  }
  return true;
}

PrefixBounds compute_prefix_bounds(const Instance& inst) {
  const std::size_t C = inst.converter_count(), T = inst.horizon;
  PrefixBounds bounds{Grid<std::int64_t>(C, T), Grid<std::int64_t>(C, T)};
  for (std::size_t c = 0; c < C; ++c) {
    const Converter& conv = inst.converters[c];
    Scalar served = 0;
    for (std::size_t t = 0; t < T; ++t) {
      served += conv.demand[t];
      Scalar low = (conv.soc_lower[t + 1] - conv.soc_lower[0] + served) / conv.heat;
      Scalar high = (conv.soc_upper[t + 1] - conv.soc_lower[0] + served) / conv.heat;
      bounds.lower(c, t) = std::max<std::int64_t>(0, low.ceil());
      bounds.upper(c, t) = std::min<std::int64_t>(std::int64_t(t + 1), high.floor());
    }
  }
  return bounds;
}

PrefixBounds reformulate(const Instance& inst) {
  PrefixBounds bounds = compute_prefix_bounds(inst);
  if (auto cell = bounds.first_empty_cell()) {
    const auto [c, t] = *cell;
    throw InfeasibleError("converter '" + inst.converters[c].id +
                          "' cannot meet its buffer bounds at t=" +
                          std::to_string(t + 1) + " (needs at least " +
                          std::to_string(bounds.lower(c, t)) +
                          " runs, allows at most " +
                          std::to_string(bounds.upper(c, t)) + ")");
  }
  return bounds;
}

Grid<Scalar> simulate_states(const Instance& inst, const Grid<int>& x) {
  const std::size_t C = inst.converter_count(), T = inst.horizon;
  require_shape(x, C, T, "simulate_states");
  Grid<Scalar> s(C, T + 1);
  for (std::size_t c = 0; c < C; ++c) {
    const Converter& conv = inst.converters[c];
    s(c, 0) = conv.soc_lower[0];
    for (std::size_t t = 0; t < T; ++t) {
      Scalar next = s(c, t) - conv.demand[t];
      if (x(c, t) != 0) next += conv.heat * Scalar(x(c, t));
      s(c, t + 1) = next;
    }
  }
  return s;
}

std::vector<FeasibilityViolation> feasibility_violations(const Instance& inst,
                                                         const Grid<int>& x) {
  using Kind = FeasibilityViolation::Kind;
  std::vector<FeasibilityViolation> out;
  const std::size_t C = inst.converter_count(), T = inst.horizon;
  require_shape(x, C, T, "feasibility_violations");
  for (std::size_t c = 0; c < C; ++c)
    for (std::size_t t = 0; t < T; ++t)
      if (x(c, t) != 0 && x(c, t) != 1) out.push_back({Kind::NotBinary, c, t});
  if (!out.empty()) return out;

  Grid<Scalar> s = simulate_states(inst, x);
  for (std::size_t c = 0; c < C; ++c) {
    const Converter& conv = inst.converters[c];
    for (std::size_t t = 0; t <= T; ++t) {
      if (less(s(c, t), conv.soc_lower[t])) out.push_back({Kind::BelowLower, c, t});
      if (less(conv.soc_upper[t], s(c, t))) out.push_back({Kind::AboveUpper, c, t});
    }
  }
  return out;
}

bool check_feasible(const Instance& inst, const Grid<int>& x) {
  if (!x.same_shape(inst.converter_count(), inst.horizon)) return false;
  return feasibility_violations(inst, x).empty();
}

std::vector<double> interval_loads(const Instance& inst, const Grid<double>& x,
                                   bool zero_base) {
  const std::size_t C = inst.converter_count(), T = inst.horizon;
  require_shape(x, C, T, "interval_loads");
  std::vector<double> load(T, 0.0);
  for (std::size_t t = 0; t < T; ++t) {
    double sum = zero_base ? 0.0 : inst.base_load[t].to_double();
    for (std::size_t c = 0; c < C; ++c)
      sum += inst.converters[c].electricity.to_double() * x(c, t);
    load[t] = sum;
  }
  return load;
}

namespace {

template <typename V, typename Max, typename Abs, typename Sub>
V fold_objective(const std::vector<V>& load, ObjectiveKind kind, Max max_of,
                 Abs abs_of, Sub sub) {
  V hi = load.front(), lo = load.front(), habs = abs_of(load.front());
  for (const V& v : load) {
    if (max_of(hi, v)) hi = v;
    if (max_of(v, lo)) lo = v;
    V a = abs_of(v);
    if (max_of(habs, a)) habs = a;
  }
  switch (kind) {
    case ObjectiveKind::Basic:
    case ObjectiveKind::Maximal: return hi;
    case ObjectiveKind::Absolute: return habs;
    case ObjectiveKind::Fluctuation: return sub(hi, lo);
  }
  return hi;
}

}  // namespace

double evaluate_objective(const Instance& inst, const Grid<double>& x,
                          ObjectiveKind kind) {
  auto load = interval_loads(inst, x, kind == ObjectiveKind::Basic);
  if (load.empty()) return 0.0;
  return fold_objective<double>(
      load, kind, [](double a, double b) { return a < b; },
      [](double v) { return std::fabs(v); },
      [](double a, double b) { return a - b; });
}

double evaluate_objective(const Instance& inst, const Grid<int>& x,
                          ObjectiveKind kind) {
  return evaluate_objective(inst, to_real(x), kind);
}

Scalar evaluate_objective_exact(const Instance& inst, const Grid<int>& x,
                                ObjectiveKind kind) {
  const std::size_t C = inst.converter_count(), T = inst.horizon;
  require_shape(x, C, T, "evaluate_objective_exact");
  if (T == 0) return 0;
  std::vector<Scalar> load(T);
  for (std::size_t t = 0; t < T; ++t) {
    Scalar sum = kind == ObjectiveKind::Basic ? Scalar(0) : inst.base_load[t];
    for (std::size_t c = 0; c < C; ++c)
      if (x(c, t) != 0) sum += inst.converters[c].electricity * Scalar(x(c, t));
    load[t] = sum;
  }
  return fold_objective<Scalar>(
      load, kind, [](const Scalar& a, const Scalar& b) { return less(a, b); },
      [](const Scalar& v) { return v.sign() < 0 ? -v : v; },
      [](const Scalar& a, const Scalar& b) { return a - b; });
}

Grid<double> to_real(const Grid<int>& x) {
  Grid<double> r(x.rows(), x.cols());
  for (std::size_t c = 0; c < x.rows(); ++c)
    for (std::size_t t = 0; t < x.cols(); ++t) r(c, t) = x(c, t);
  return r;
}

std::vector<int> lazy_schedule(std::span<const std::int64_t> lower,
                               std::span<const std::int64_t> upper) {
  const std::size_t T = lower.size();
  std::vector<std::int64_t> need(lower.begin(), lower.end());
  for (std::size_t t = T; t-- > 1;) need[t - 1] = std::max(need[t - 1], need[t] - 1);
  std::vector<int> x(T, 0);
  std::int64_t running = 0;
  for (std::size_t t = 0; t < T; ++t) {
    if (running < need[t]) {
      x[t] = 1;
      ++running;
    }
    if (running < need[t] || running > upper[t])
      throw InfeasibleError("no schedule meets the running-count bounds at t=" +
                            std::to_string(t + 1));
  }
  return x;
}

ZeroElectricitySplit split_zero_electricity(const Instance& inst) {
  ZeroElectricitySplit split;
  split.core.horizon = inst.horizon;
  split.core.base_load = inst.base_load;
  Instance zero;
  zero.horizon = inst.horizon;
  zero.base_load = inst.base_load;
  for (std::size_t c = 0; c < inst.converter_count(); ++c) {
    if (inst.converters[c].electricity.is_zero()) {
      split.zero_index.push_back(c);
      zero.converters.push_back(inst.converters[c]);
    } else {
      split.core_index.push_back(c);
      split.core.converters.push_back(inst.converters[c]);
    }
  }
  if (!zero.converters.empty()) {
    PrefixBounds bounds = reformulate(zero);
    for (std::size_t k = 0; k < zero.converters.size(); ++k)
      split.zero_schedules.push_back(
          lazy_schedule(bounds.lower.row(k), bounds.upper.row(k)));
  }
  return split;
}

Grid<int> merge_split_schedule(const ZeroElectricitySplit& split,
                               const Grid<int>& core_schedule) {
  const std::size_t T = split.core.horizon;
  const std::size_t C = split.core_index.size() + split.zero_index.size();
  require_shape(core_schedule, split.core_index.size(), T, "merge_split_schedule");
  Grid<int> x(C, T);
  for (std::size_t k = 0; k < split.core_index.size(); ++k)
    for (std::size_t t = 0; t < T; ++t) x(split.core_index[k], t) = core_schedule(k, t);
  for (std::size_t k = 0; k < split.zero_index.size(); ++k)
    for (std::size_t t = 0; t < T; ++t)
      x(split.zero_index[k], t) = split.zero_schedules[k][t];
  return x;
}

}  // namespace peakshave
