// Copyright 2026 The peakshave Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "instance.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace peakshave {

inline constexpr std::size_t kDefaultOracleCap = 24;

// Visits every binary schedule that meets the running-count bounds, in
// lexicographic order of the row-major cell sequence. Throws
// CapExceededError when C*T exceeds `cap`.
void enumerate_feasible(const PrefixBounds& bounds, std::size_t cap,
                        const std::function<void(const Grid<int>&)>& visit);
std::vector<Grid<int>> feasible_schedules(const PrefixBounds& bounds,
                                          std::size_t cap = kDefaultOracleCap);

struct OracleResult {
  double optimal_value = 0.0;  // m^O
  Grid<int> schedule;          // lexicographically smallest optimum
  std::uint64_t examined = 0;  // feasible schedules evaluated
};

// Exhaustive minimum of the objective. Zero-electricity converters are
// allowed. Throws InfeasibleError, CapExceededError or ValidationError.
OracleResult exact_solve(const Instance& inst, ObjectiveKind kind,
                         std::size_t cap = kDefaultOracleCap);

}  // namespace peakshave
