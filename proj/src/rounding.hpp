// Copyright 2026 The peakshave Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "instance.hpp"
#include "nonintegrality_graph.hpp"
#include "relaxation.hpp"
#include "simplex.hpp"
#include "vertex_reduction.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace peakshave {

struct PeelStep {
  std::size_t class_index;
  // The only neighbour of the class with degree >= 2 once all later classes
  // are removed, if there is one.
  std::optional<std::size_t> anchor;
};

using PeelOrder = std::vector<PeelStep>;

// Builds the order from the back by repeatedly removing a class vertex with
// at most one non-leaf neighbour. Linear time. Throws InternalError when the
// graph has a cycle.
PeelOrder peel_order(const NonIntegralityGraph& g);

// Checks the defining property of a peel order by brute force.
bool peel_order_holds(const NonIntegralityGraph& g, const PeelOrder& order);

// Rounds every fractional value of z, one class vertex at a time, so that
// floor(z^) <= x^ <= ceil(z^) for all running counts and the per-interval
// load moves by at most max_c |E_c|. Without an anchor the smallest interval
// of the class is used.
Grid<int> round_solution(std::span<const double> electricity,
                         const RelaxedSolution& z, const NonIntegralityGraph& g,
                         const PeelOrder& order);

struct BinarySchedule {
  Grid<int> x;
  double objective = 0.0;  // m^A
  double lp_bound = 0.0;   // m^LP
  double gap = 0.0;        // m^A - m^LP
};

struct SolveOptions {
  double snap_tol = kSnapTolerance;
  RelaxationForm form = RelaxationForm::RunningCounts;
  SimplexOptions simplex;
};

struct ApproximateSolution {
  BinarySchedule schedule;
  RelaxedSolution relaxed;  // optimal LP solution y
  ForestReduction reduction;
  std::size_t class_vertices = 0;
  std::size_t anchored_steps = 0;
  std::size_t lp_iterations = 0;
};

// reformulate -> LP relaxation -> forest reduction -> peel order -> rounding.
// Throws ValidationError for invalid instances (including E_c = 0) and
// InfeasibleError when no schedule exists.
ApproximateSolution approximate_solve(const Instance& inst, ObjectiveKind kind,
                                      const SolveOptions& options = {});

}  // namespace peakshave
