// Copyright 2026 The peakshave Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "grid.hpp"
#include "instance.hpp"
#include "linear_program.hpp"
#include "simplex.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace peakshave {

// Values within this distance of an integer are snapped and flagged integral.
inline constexpr double kSnapTolerance = 1e-7;

// Controls: the variables are x(c,t) and every running-count bound is a pair
// of rows over a prefix of the controls. RunningCounts: the variables are the
// prefix sums p(c,t) themselves, the count bounds become variable bounds and
// 0 <= p(c,t) - p(c,t-1) <= 1 are the only per-cell rows. Both describe the
// same polytope; the second has far fewer nonzeros.
enum class RelaxationForm { Controls, RunningCounts };

struct RelaxationLayout {
  RelaxationForm form = RelaxationForm::Controls;
  std::size_t converters = 0;
  std::size_t horizon = 0;
  ObjectiveKind kind = ObjectiveKind::Maximal;
  std::size_t peak = 0;    // m, or m_u for the fluctuation band
  std::size_t trough = 0;  // m_l; fluctuation only

  // x(c,t), or p(c,t) in the running-count form.
  std::size_t control(std::size_t c, std::size_t t) const { return c * horizon + t; }
};

struct Relaxation {
  LinearProgram lp;
  RelaxationLayout layout;
};

// Controls x(c,t) in [0,1], the peak variable(s), one peak row per interval
// (two for absolute and fluctuation), and a lower and an upper row per
// running-count bound. Basic drops the base load.
Relaxation build_relaxation(const Instance& inst, const PrefixBounds& bounds,
                            ObjectiveKind kind,
                            RelaxationForm form = RelaxationForm::Controls);

// Fractional schedule with cached prefix sums. Every stored value within the
// snap tolerance of an integer is that integer exactly, so integrality tests
// are plain comparisons.
class RelaxedSolution {
 public:
  RelaxedSolution() = default;
  RelaxedSolution(Grid<double> values, double objective,
                  double snap_tol = kSnapTolerance);

  std::size_t converters() const { return values_.rows(); }
  std::size_t horizon() const { return values_.cols(); }
  double objective() const { return objective_; }
  double snap_tolerance() const { return snap_tol_; }

  const Grid<double>& values() const { return values_; }
  const Grid<double>& prefixes() const { return prefix_; }
  double value(std::size_t c, std::size_t t) const { return values_(c, t); }
  double prefix(std::size_t c, std::size_t t) const { return prefix_(c, t); }
  // Prefix through the interval before t; 0 for t == 0.
  double prefix_before(std::size_t c, std::size_t t) const {
    return t == 0 ? 0.0 : prefix_(c, t - 1);
  }
  bool value_integral(std::size_t c, std::size_t t) const;
  bool prefix_integral(std::size_t c, std::size_t t) const;

  // Number of fractional values plus fractional prefix sums.
  std::size_t potential() const;
  std::size_t fractional_values() const;

  // sum_c E_c y(c,t) per interval (base load excluded).
  std::vector<double> converter_load(std::span<const double> electricity) const;

  // Sets one value (snapped) without touching the prefix cache.
  void set_value(std::size_t c, std::size_t t, double v);
  // Re-accumulates prefix sums of converter c from interval t onward.
  void refresh_prefix(std::size_t c, std::size_t from = 0);

 private:
  double snap(double v) const;

  Grid<double> values_;
  Grid<double> prefix_;
  double objective_ = 0.0;
  double snap_tol_ = kSnapTolerance;
};

RelaxedSolution extract_relaxed(const LpSolution& sol,
                                const RelaxationLayout& layout,
                                double snap_tol = kSnapTolerance);

}  // namespace peakshave
