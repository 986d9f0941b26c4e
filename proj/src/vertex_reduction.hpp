// Copyright 2026 The peakshave Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "nonintegrality_graph.hpp"
#include "relaxation.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace peakshave {

// floor/ceil of the running counts of the optimal relaxed solution. Every
// intermediate point of the reduction keeps its running counts inside this
// box, which is fixed once for the whole reduction.
struct PrefixBox {
  Grid<double> floor;
  Grid<double> ceil;

  static PrefixBox around(const RelaxedSolution& y);
  bool contains(const RelaxedSolution& z, double tol = 1e-9) const;
};

struct LineMove {
  std::size_t cycle_length = 0;
  double alpha = 0.0;
  std::size_t potential_before = 0;
  std::size_t potential_after = 0;
};

// Moves along z(a): z(c_i,t_i) += a/E_{c_i}, z(c_i,t_{i+1}) -= a/E_{c_i}, with
// the largest a > 0 that keeps 0 <= z <= 1 and the running counts inside
// `box`. Per-interval loads are unchanged. Throws InternalError if no
// positive step exists.
RelaxedSolution apply_line_move(const RelaxedSolution& y, const CycleWitness& w,
                                std::span<const double> electricity,
                                const PrefixBox& box, LineMove* info = nullptr);
RelaxedSolution apply_line_move(const RelaxedSolution& y, const CycleWitness& w,
                                std::span<const double> electricity,
                                LineMove* info = nullptr);

struct ForestReduction {
  RelaxedSolution solution;
  std::size_t initial_potential = 0;
  std::vector<LineMove> moves;
};

// Applies line moves until the non-integrality graph is a forest. At most
// 2CT moves; the potential strictly decreases on each (checked, throws
// InternalError otherwise).
ForestReduction reduce_to_forest(const RelaxedSolution& y,
                                 std::span<const double> electricity);

}  // namespace peakshave
