// Copyright 2026 The peakshave Authors
// SPDX-License-Identifier: Apache-2.0

#include "relaxation.hpp"

#include <algorithm>
#include <cmath>

namespace peakshave {

namespace {

std::string cell_tag(std::size_t c, std::size_t t) {
  return std::to_string(c + 1) + "_" + std::to_string(t + 1);
}

// Count bounds tightened by the step rows: counts never decrease and grow by
// at most one per interval. The polytope is unchanged, but every count at its
// tightened lower bound already satisfies the step rows, which leaves the
// simplex little to do in phase one.
PrefixBounds implied_bounds(const PrefixBounds& bounds) {
  PrefixBounds out = bounds;
  const std::size_t T = bounds.horizon();
  for (std::size_t c = 0; c < bounds.converters(); ++c) {
    auto lo = out.lower.row(c);
    auto up = out.upper.row(c);
    for (std::size_t t = 1; t < T; ++t) {
      lo[t] = std::max(lo[t], lo[t - 1]);
      up[t] = std::min(up[t], up[t - 1] + 1);
    }
    for (std::size_t t = T - 1; t-- > 0;) {
      lo[t] = std::max(lo[t], lo[t + 1] - 1);
      up[t] = std::min(up[t], up[t + 1]);
    }
  }
  return out;
}

}  // namespace

Relaxation build_relaxation(const Instance& inst, const PrefixBounds& bounds,
                            ObjectiveKind kind, RelaxationForm form) {
  const std::size_t C = inst.converter_count(), T = inst.horizon;
  require_shape(bounds.lower, C, T, "build_relaxation");
  const bool counts = form == RelaxationForm::RunningCounts;
  Relaxation out;
  LinearProgram& lp = out.lp;
  RelaxationLayout& layout = out.layout;
  layout.form = form;
  layout.converters = C;
  layout.horizon = T;
  layout.kind = kind;

  const PrefixBounds box = counts ? implied_bounds(bounds) : PrefixBounds{};
  for (std::size_t c = 0; c < C; ++c)
    for (std::size_t t = 0; t < T; ++t) {
      if (counts) {
        // Crossed tightened bounds mean an infeasible program; the plain
        // bounds keep the program well formed so the simplex can say so.
        const bool crossed = box.lower(c, t) > box.upper(c, t);
        const auto& src = crossed ? bounds : box;
        lp.add_variable(double(src.lower(c, t)), double(src.upper(c, t)), 0.0,
                        "p_" + cell_tag(c, t));
      }
      else
        lp.add_variable(0.0, 1.0, 0.0, "x_" + cell_tag(c, t));
    }
  if (kind == ObjectiveKind::Fluctuation) {
    layout.trough = lp.add_variable(-kInfinity, kInfinity, -1.0, "m_l");
    layout.peak = lp.add_variable(-kInfinity, kInfinity, 1.0, "m_u");
  } else {
    layout.peak = lp.add_variable(-kInfinity, kInfinity, 1.0, "m");
  }

  const bool drop_base = kind == ObjectiveKind::Basic;
  for (std::size_t t = 0; t < T; ++t) {
    const double base = drop_base ? 0.0 : inst.base_load[t].to_double();
    std::vector<LinearTerm> load;
    for (std::size_t c = 0; c < C; ++c) {
      const double e = inst.converters[c].electricity.to_double();
      load.push_back({layout.control(c, t), e});
      if (counts && t > 0) load.push_back({layout.control(c, t - 1), -e});
    }
    const std::string tag = std::to_string(t + 1);

    // F_t + sum E x <= m
    auto upper_row = load;
    upper_row.push_back({layout.peak, -1.0});
    lp.add_constraint({upper_row, Relation::LessEqual, -base, "peak_" + tag});

    if (kind == ObjectiveKind::Absolute) {
      // -(F_t + sum E x) <= m
      std::vector<LinearTerm> neg;
      for (const auto& term : load) neg.push_back({term.var, -term.coef});
      neg.push_back({layout.peak, -1.0});
      lp.add_constraint({neg, Relation::LessEqual, base, "valley_" + tag});
    } else if (kind == ObjectiveKind::Fluctuation) {
      // F_t + sum E x >= m_l
      auto lower_row = load;
      lower_row.push_back({layout.trough, -1.0});
      lp.add_constraint({lower_row, Relation::GreaterEqual, -base, "trough_" + tag});
    }
  }

  for (std::size_t c = 0; c < C; ++c) {
    if (counts) {
      // p(c,0) in [0,1] already holds through the clipped bounds.
      for (std::size_t t = 1; t < T; ++t) {
        std::vector<LinearTerm> step = {{layout.control(c, t), 1.0},
                                        {layout.control(c, t - 1), -1.0}};
        lp.add_constraint({step, Relation::GreaterEqual, 0.0, "step_min_" + cell_tag(c, t)});
        lp.add_constraint({step, Relation::LessEqual, 1.0, "step_max_" + cell_tag(c, t)});
      }
      continue;
    }
    std::vector<LinearTerm> running;
    for (std::size_t t = 0; t < T; ++t) {
      running.push_back({layout.control(c, t), 1.0});
      const std::string tag = cell_tag(c, t);
      lp.add_constraint({running, Relation::GreaterEqual,
                         double(bounds.lower(c, t)), "runs_min_" + tag});
      lp.add_constraint({running, Relation::LessEqual,
                         double(bounds.upper(c, t)), "runs_max_" + tag});
    }
  }
  return out;
}

RelaxedSolution::RelaxedSolution(Grid<double> values, double objective,
                                 double snap_tol)
    : values_(std::move(values)),
      prefix_(values_.rows(), values_.cols()),
      objective_(objective),
      snap_tol_(snap_tol) {
  for (std::size_t c = 0; c < converters(); ++c) {
    for (std::size_t t = 0; t < horizon(); ++t) values_(c, t) = snap(values_(c, t));
    refresh_prefix(c, 0);
  }
}

double RelaxedSolution::snap(double v) const {
  double nearest = std::nearbyint(v);
  return std::fabs(v - nearest) <= snap_tol_ ? nearest + 0.0 : v;
}

bool RelaxedSolution::value_integral(std::size_t c, std::size_t t) const {
  double v = values_(c, t);
  return v == std::nearbyint(v);
}

bool RelaxedSolution::prefix_integral(std::size_t c, std::size_t t) const {
  double v = prefix_(c, t);
  return v == std::nearbyint(v);
}

std::size_t RelaxedSolution::fractional_values() const {
  std::size_t n = 0;
  for (std::size_t c = 0; c < converters(); ++c)
    for (std::size_t t = 0; t < horizon(); ++t) n += !value_integral(c, t);
  return n;
}

std::size_t RelaxedSolution::potential() const {
  std::size_t n = fractional_values();
  for (std::size_t c = 0; c < converters(); ++c)
    for (std::size_t t = 0; t < horizon(); ++t) n += !prefix_integral(c, t);
  return n;
}

std::vector<double> RelaxedSolution::converter_load(
    std::span<const double> electricity) const {
  std::vector<double> load(horizon(), 0.0);
  for (std::size_t t = 0; t < horizon(); ++t)
    for (std::size_t c = 0; c < converters(); ++c)
      load[t] += electricity[c] * values_(c, t);
  return load;
}

void RelaxedSolution::set_value(std::size_t c, std::size_t t, double v) {
  values_(c, t) = snap(v);
}

void RelaxedSolution::refresh_prefix(std::size_t c, std::size_t from) {
  double running = prefix_before(c, from);
  for (std::size_t t = from; t < horizon(); ++t) {
    running = snap(running + values_(c, t));
    prefix_(c, t) = running;
  }
}

RelaxedSolution extract_relaxed(const LpSolution& sol,
                                const RelaxationLayout& layout, double snap_tol) {
  Grid<double> y(layout.converters, layout.horizon);
  for (std::size_t c = 0; c < layout.converters; ++c) {
    double before = 0.0;
    for (std::size_t t = 0; t < layout.horizon; ++t) {
      double v = sol.values.at(layout.control(c, t));
      if (layout.form == RelaxationForm::RunningCounts) {
        // Snap the count first so an integral prefix yields exact steps.
        const double nearest = std::nearbyint(v);
        if (std::fabs(v - nearest) <= snap_tol) v = nearest;
        const double count = v;
        v = count - before;
        before = count;
      }
      y(c, t) = v;
    }
  }
  return RelaxedSolution(std::move(y), sol.objective, snap_tol);
}

}  // namespace peakshave
