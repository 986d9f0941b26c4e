// Copyright 2026 The peakshave Authors
// SPDX-License-Identifier: Apache-2.0

#include "rounding.hpp"

#include "errors.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace peakshave {

PeelOrder peel_order(const NonIntegralityGraph& g) {
  const std::size_t K = g.classes().size();
  std::vector<std::size_t> degree(g.horizon());
  for (std::size_t t = 0; t < g.horizon(); ++t) degree[t] = g.time_degree(t);
  std::vector<std::size_t> non_leaf(K, 0);
  for (std::size_t k = 0; k < K; ++k)
    for (std::size_t t : g.class_vertex(k).times) non_leaf[k] += degree[t] >= 2;

  std::vector<char> removed(K, 0);
  std::deque<std::size_t> ready;
  for (std::size_t k = 0; k < K; ++k)
    if (non_leaf[k] <= 1) ready.push_back(k);

  PeelOrder reversed;
  reversed.reserve(K);
  while (!ready.empty()) {
    const std::size_t k = ready.front();
    ready.pop_front();
    if (removed[k]) continue;
    PeelStep step{k, std::nullopt};
    for (std::size_t t : g.class_vertex(k).times)
      if (degree[t] >= 2) step.anchor = t;
    removed[k] = 1;
    reversed.push_back(step);
    for (std::size_t t : g.class_vertex(k).times) {
      if (--degree[t] != 1) continue;
      for (std::size_t other : g.classes_at(t)) {
        if (removed[other]) continue;
        if (--non_leaf[other] <= 1) ready.push_back(other);
      }
    }
  }
  if (reversed.size() != K)
    throw InternalError("peel order requested for a graph with a cycle");
  return PeelOrder(reversed.rbegin(), reversed.rend());
}

bool peel_order_holds(const NonIntegralityGraph& g, const PeelOrder& order) {
  const std::size_t K = g.classes().size();
  if (order.size() != K) return false;
  std::vector<char> present(K, 0), listed(K, 0);
  for (const auto& step : order) {
    if (step.class_index >= K || listed[step.class_index]) return false;
    listed[step.class_index] = 1;
  }
  // Walk i = k..1, adding class i back before inspecting it.
  for (std::size_t i = K; i-- > 0;) present[order[i].class_index] = 1;
  for (std::size_t i = K; i-- > 0;) {
    const auto& step = order[i];
    std::optional<std::size_t> non_leaf;
    std::size_t count = 0;
    for (std::size_t t : g.class_vertex(step.class_index).times) {
      std::size_t deg = 0;
      for (std::size_t other : g.classes_at(t)) deg += present[other];
      if (deg >= 2) {
        ++count;
        non_leaf = t;
      }
    }
    if (count > 1 || non_leaf != step.anchor) return false;
    present[step.class_index] = 0;
  }
  return true;
}

Grid<int> round_solution(std::span<const double> electricity,
                         const RelaxedSolution& z, const NonIntegralityGraph& g,
                         const PeelOrder& order) {
  const std::size_t C = z.converters(), T = z.horizon();
  Grid<double> x = z.values();
  std::vector<double> drift(T, 0.0);  // load of x minus load of z

  auto floor_before = [&](std::size_t c, std::size_t t) {
    return std::floor(z.prefix_before(c, t));
  };
  auto ceil_before = [&](std::size_t c, std::size_t t) {
    return std::ceil(z.prefix_before(c, t));
  };
  auto floor_step = [&](std::size_t c, std::size_t t) {
    return std::floor(z.prefix(c, t)) - floor_before(c, t);
  };
  auto ceil_step = [&](std::size_t c, std::size_t t) {
    return std::ceil(z.prefix(c, t)) - ceil_before(c, t);
  };

  for (const PeelStep& step : order) {
    const ClassVertex& cls = g.class_vertex(step.class_index);
    const std::size_t c = cls.converter;
    const double e = electricity[c];
    const std::size_t pivot = step.anchor.value_or(cls.times.front());
    auto assign = [&](std::size_t t, double v) {
      drift[t] += e * (v - x(c, t));
      x(c, t) = v;
    };

    double gap = -drift[pivot];  // load of z minus load of x at the pivot
    if (std::fabs(gap) <= 1e-9) gap = 0.0;
    const bool raise = e * gap >= 0.0;
    // Running count reached at the pivot; later cells follow whichever of
    // floor/ceil of the relaxed prefix it landed on.
    const double landed = raise ? floor_before(c, pivot) + 1.0 : ceil_before(c, pivot);
    const bool ceil_track = landed == std::ceil(z.prefix(c, pivot));

    for (std::size_t t : cls.times) {
      if (t < pivot) {
        assign(t, raise ? floor_step(c, t) : ceil_step(c, t));
      } else if (t == pivot) {
        assign(t, raise ? 1.0 : 0.0);
      } else if (ceil_track) {
        assign(t, ceil_step(c, t));
      } else {
        assign(t, floor_step(c, t));
      }
    }
  }

  Grid<int> out(C, T);
  for (std::size_t c = 0; c < C; ++c)
    for (std::size_t t = 0; t < T; ++t) {
      const double v = x(c, t);
      if (v != 0.0 && v != 1.0)
        throw InternalError("rounding left a non-binary value " + std::to_string(v) +
                            " at converter " + std::to_string(c) + ", t=" +
                            std::to_string(t + 1));
      out(c, t) = int(v);
    }
  return out;
}

ApproximateSolution approximate_solve(const Instance& inst, ObjectiveKind kind,
                                      const SolveOptions& options) {
  ValidationReport report = validate_instance(inst);
  if (!report.passed()) throw ValidationError(report.summary());
  const PrefixBounds bounds = reformulate(inst);

  Relaxation relaxation = build_relaxation(inst, bounds, kind, options.form);
  LpSolution lp = solve_lp(relaxation.lp, options.simplex);
  switch (lp.status) {
    case LpStatus::Optimal: break;
    case LpStatus::Infeasible:
      throw InfeasibleError("the relaxation has no feasible point");
    default:
      throw InternalError("LP solve ended with status " +
                          std::string(to_string(lp.status)));
  }

  ApproximateSolution out;
  out.lp_iterations = lp.iterations;
  out.relaxed = extract_relaxed(lp, relaxation.layout, options.snap_tol);
  const std::vector<double> electricity = inst.electricity();
  out.reduction = reduce_to_forest(out.relaxed, electricity);

  const RelaxedSolution& z = out.reduction.solution;
  NonIntegralityGraph graph = build_graph(z);
  PeelOrder order = peel_order(graph);
  out.class_vertices = order.size();
  out.anchored_steps = std::size_t(std::count_if(
      order.begin(), order.end(), [](const PeelStep& s) { return s.anchor.has_value(); }));

  BinarySchedule& schedule = out.schedule;
  schedule.x = round_solution(electricity, z, graph, order);
  schedule.objective = evaluate_objective(inst, schedule.x, kind);
  schedule.lp_bound = out.relaxed.objective();
  schedule.gap = schedule.objective - schedule.lp_bound;
  return out;
}

}  // namespace peakshave
