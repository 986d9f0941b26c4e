// Copyright 2026 The peakshave Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "grid.hpp"
#include "scalar.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace peakshave {

// Interval indices are 0-based throughout: interval t covers the running
// decision x(c, t); buffer state index t in [0, T] is the charge at the start
// of interval t (index T is the end of the horizon).

struct Converter {
  std::string id;
  Scalar electricity;  // consumed per running interval; negative = produced
  Scalar heat;         // produced per running interval, > 0
  std::vector<Scalar> demand;     // T entries
  std::vector<Scalar> soc_lower;  // T+1 entries
  std::vector<Scalar> soc_upper;  // T+1 entries
};

struct Instance {
  std::size_t horizon = 0;
  std::vector<Scalar> base_load;  // T entries
  std::vector<Converter> converters;

  std::size_t converter_count() const { return converters.size(); }
  std::vector<double> electricity() const;
  // E = max_c |E_c|; the additive error unit of the rounding.
  double max_abs_electricity() const;
};

enum class ObjectiveKind { Basic, Maximal, Absolute, Fluctuation };

std::string_view to_string(ObjectiveKind kind);
std::optional<ObjectiveKind> parse_objective(std::string_view name);
inline constexpr ObjectiveKind kAllObjectives[] = {
    ObjectiveKind::Basic, ObjectiveKind::Maximal, ObjectiveKind::Absolute,
    ObjectiveKind::Fluctuation};

// Additive error the rounding guarantees for an objective: E, or 2E for the
// fluctuation band.
double error_bound(const Instance& inst, ObjectiveKind kind);

struct ValidationIssue {
  enum class Code {
    EmptyHorizon,
    NoConverters,
    BaseLoadLength,
    DemandLength,
    BoundLength,
    ZeroElectricity,
    NonPositiveHeat,
    NegativeDemand,
    BoundsCrossed,
    InitialChargeNotFixed,
  };
  Code code;
  std::optional<std::size_t> converter;
  std::optional<std::size_t> interval;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool passed() const { return issues.empty(); }
  // True when every issue is a zero-electricity converter, i.e. the instance
  // becomes valid after split_zero_electricity.
  bool only_zero_electricity() const;
  std::string summary() const;
};

ValidationReport validate_instance(const Instance& inst);

// Running-count bounds: A(c,t) <= sum_{i<=t} x(c,i) <= B(c,t).
struct PrefixBounds {
  Grid<std::int64_t> lower;
  Grid<std::int64_t> upper;

  std::size_t converters() const { return lower.rows(); }
  std::size_t horizon() const { return lower.cols(); }
  // First (c, t) with lower > upper, if any.
  std::optional<std::pair<std::size_t, std::size_t>> first_empty_cell() const;
  bool admits(const Grid<int>& x) const;
};

// Buffer bounds expressed on prefix sums, clipped to [0, t+1]. Never throws on
// infeasibility; see reformulate().
PrefixBounds compute_prefix_bounds(const Instance& inst);

// compute_prefix_bounds() plus the emptiness check; throws InfeasibleError
// naming the first empty cell.
PrefixBounds reformulate(const Instance& inst);

// s(c, 0) = L(c, 0); s(c, t+1) = s(c, t) + H_c x(c, t) - D(c, t).
Grid<Scalar> simulate_states(const Instance& inst, const Grid<int>& x);

struct FeasibilityViolation {
  enum class Kind { NotBinary, BelowLower, AboveUpper };
  Kind kind;
  std::size_t converter;
  std::size_t index;  // interval for NotBinary, state index otherwise
};

std::vector<FeasibilityViolation> feasibility_violations(const Instance& inst,
                                                         const Grid<int>& x);
bool check_feasible(const Instance& inst, const Grid<int>& x);

// Per-interval load F_t + sum_c E_c x(c,t). `zero_base` drops F (Basic).
std::vector<double> interval_loads(const Instance& inst, const Grid<double>& x,
                                   bool zero_base = false);
double evaluate_objective(const Instance& inst, const Grid<double>& x,
                          ObjectiveKind kind);
double evaluate_objective(const Instance& inst, const Grid<int>& x,
                          ObjectiveKind kind);
// Same as evaluate_objective on a binary schedule, exact when the instance is.
Scalar evaluate_objective_exact(const Instance& inst, const Grid<int>& x,
                                ObjectiveKind kind);

Grid<double> to_real(const Grid<int>& x);

// Converters with E_c = 0 do not influence any objective. They are removed
// from the instance and scheduled on their own.
struct ZeroElectricitySplit {
  Instance core;                             // remaining converters
  std::vector<std::size_t> core_index;       // core row -> original row
  std::vector<std::size_t> zero_index;       // original rows with E_c = 0
  std::vector<std::vector<int>> zero_schedules;
};

ZeroElectricitySplit split_zero_electricity(const Instance& inst);
// Runs a converter only when its running count would otherwise fall below
// the backward-tightened lower bound. Throws InfeasibleError.
std::vector<int> lazy_schedule(std::span<const std::int64_t> lower,
                               std::span<const std::int64_t> upper);
Grid<int> merge_split_schedule(const ZeroElectricitySplit& split,
                               const Grid<int>& core_schedule);

}  // namespace peakshave
