// Copyright 2026 The peakshave Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "linear_program.hpp"

#include <cstddef>
#include <string_view>
#include <vector>

namespace peakshave {

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

std::string_view to_string(LpStatus status);

struct SimplexOptions {
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-9;
  double pivot_tol = 1e-9;
  std::size_t refactor_interval = 100;
  // Consecutive degenerate pivots before pricing switches to Bland's rule.
  std::size_t bland_after = 50;
  std::size_t max_iterations = 0;  // 0: 20 * (rows + columns) + 10000
};

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> values;  // one per declared variable
  double objective = 0.0;
  std::size_t iterations = 0;
  std::size_t phase_one_iterations = 0;
  std::size_t refactorizations = 0;
};

// Bounded-variable revised primal simplex. Rows are turned into bounded
// logical variables (identical rows are merged into ranged rows), phase one
// minimizes the sum of bound infeasibilities, and the basis is kept as a
// sparse LU factorization plus product-form eta updates. Pricing is Dantzig
// with lowest-index ties, falling back to Bland's rule on degenerate runs.
// The returned point is a basic solution, hence a vertex of the LP polytope.
LpSolution solve_lp(const LinearProgram& lp, const SimplexOptions& options = {});

}  // namespace peakshave
