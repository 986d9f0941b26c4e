// Copyright 2026 The peakshave Authors
// SPDX-License-Identifier: Apache-2.0

#include "vertex_reduction.hpp"

#include "errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace peakshave {

PrefixBox PrefixBox::around(const RelaxedSolution& y) {
  PrefixBox box{Grid<double>(y.converters(), y.horizon()),
                Grid<double>(y.converters(), y.horizon())};
  for (std::size_t c = 0; c < y.converters(); ++c)
    for (std::size_t t = 0; t < y.horizon(); ++t) {
      box.floor(c, t) = std::floor(y.prefix(c, t));
      box.ceil(c, t) = std::ceil(y.prefix(c, t));
    }
  return box;
}

bool PrefixBox::contains(const RelaxedSolution& z, double tol) const {
  for (std::size_t c = 0; c < z.converters(); ++c)
    for (std::size_t t = 0; t < z.horizon(); ++t)
      if (z.prefix(c, t) < floor(c, t) - tol || z.prefix(c, t) > ceil(c, t) + tol)
        return false;
  return true;
}

RelaxedSolution apply_line_move(const RelaxedSolution& y, const CycleWitness& w,
                                std::span<const double> electricity,
                                const PrefixBox& box, LineMove* info) {
  const std::size_t T = y.horizon();
  // Rate of change of each moved value per unit step.
  std::map<std::pair<std::size_t, std::size_t>, double> rate;
  for (std::size_t i = 0; i < w.length(); ++i) {
    const std::size_t c = w.converters[i];
    const double unit = 1.0 / electricity[c];
    rate[{c, w.times[i]}] += unit;
    rate[{c, w.next_time(i)}] -= unit;
  }

  double alpha = kInfinity;
  auto limit = [&alpha](double room, double slope) {
    if (slope > 0) alpha = std::min(alpha, room / slope);
  };
  std::map<std::size_t, std::vector<double>> prefix_rate;
  for (const auto& [cell, d] : rate) {
    const auto [c, t] = cell;
    const double v = y.value(c, t);
    if (d > 0) limit(1.0 - v, d);
    if (d < 0) limit(v, -d);
    auto& row = prefix_rate.try_emplace(c, T, 0.0).first->second;
    row[t] += d;
  }
  for (auto& [c, row] : prefix_rate) {
    double running = 0.0;
    for (std::size_t t = 0; t < T; ++t) {
      running += row[t];
      row[t] = running;
      if (running == 0.0) continue;
      const double p = y.prefix(c, t);
      if (running > 0) limit(box.ceil(c, t) - p, running);
      else limit(p - box.floor(c, t), -running);
    }
  }
  if (!(alpha > 0.0) || alpha == kInfinity)
    throw InternalError("line move has no positive step (alpha = " +
                        std::to_string(alpha) + ")");

  RelaxedSolution z = y;
  std::map<std::size_t, std::size_t> first_touched;
  for (const auto& [cell, d] : rate) {
    const auto [c, t] = cell;
    double v = y.value(c, t) + alpha * d;
    // The blocking value lands on its bound exactly.
    if (std::fabs(v) <= 1e-12) v = 0.0;
    if (std::fabs(v - 1.0) <= 1e-12) v = 1.0;
    z.set_value(c, t, v);
    auto [it, fresh] = first_touched.try_emplace(c, t);
    if (!fresh) it->second = std::min(it->second, t);
  }
  for (const auto& [c, t] : first_touched) z.refresh_prefix(c, t);

  if (info) {
    info->cycle_length = w.length();
    info->alpha = alpha;
    info->potential_before = y.potential();
    info->potential_after = z.potential();
  }
  return z;
}

RelaxedSolution apply_line_move(const RelaxedSolution& y, const CycleWitness& w,
                                std::span<const double> electricity,
                                LineMove* info) {
  return apply_line_move(y, w, electricity, PrefixBox::around(y), info);
}

ForestReduction reduce_to_forest(const RelaxedSolution& y,
                                 std::span<const double> electricity) {
  const PrefixBox box = PrefixBox::around(y);
  const std::size_t max_moves = 2 * y.converters() * y.horizon();
  ForestReduction out;
  out.initial_potential = y.potential();
  out.solution = y;
  while (auto cycle = find_cycle(build_graph(out.solution))) {
    LineMove move;
    out.solution = apply_line_move(out.solution, *cycle, electricity, box, &move);
    if (move.potential_after >= move.potential_before)
      throw InternalError("line move did not decrease the potential (" +
                          std::to_string(move.potential_before) + " -> " +
                          std::to_string(move.potential_after) + ")");
    out.moves.push_back(move);
    if (out.moves.size() > max_moves)
      throw InternalError("forest reduction exceeded 2CT line moves");
  }
  return out;
}

}  // namespace peakshave
