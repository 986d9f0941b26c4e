// Copyright 2026 The peakshave Authors
// SPDX-License-Identifier: Apache-2.0

// Test-side fixtures and reference computations. The reference functions
// below deliberately avoid the library's own simulation and evaluation code:
// they re-derive states and objectives from the model definition with exact
// rationals so library results can be checked against them.

#pragma once

#include "instance.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

namespace peakshave::testing {

using Q = boost::multiprecision::cpp_rational;

inline std::vector<Scalar> ints(std::initializer_list<std::int64_t> v) {
  return {v.begin(), v.end()};
}

inline Converter converter(std::string id, std::int64_t e, std::int64_t h,
                           std::initializer_list<std::int64_t> demand,
                           std::initializer_list<std::int64_t> lower,
                           std::initializer_list<std::int64_t> upper) {
  return {std::move(id), e, h, ints(demand), ints(lower), ints(upper)};
}

// C=1, T=2, E=2, H=1, L=[0,0,0], U=[0,1,1], D=[1,0], F=[0,0].
inline Instance instance_one() {
  Instance inst;
  inst.horizon = 2;
  inst.base_load = ints({0, 0});
  inst.converters.push_back(converter("c1", 2, 1, {1, 0}, {0, 0, 0}, {0, 1, 1}));
  return inst;
}

// C=2, T=2, E=[1,1], H=[1,1], L=0, U=[0,1,0], D=[0,1] for both converters.
inline Instance instance_two() {
  Instance inst;
  inst.horizon = 2;
  inst.base_load = ints({0, 0});
  inst.converters.push_back(converter("c1", 1, 1, {0, 1}, {0, 0, 0}, {0, 1, 0}));
  inst.converters.push_back(converter("c2", 1, 1, {0, 1}, {0, 0, 0}, {0, 1, 0}));
  return inst;
}

inline Q q(const Scalar& s) { return s.rational(); }

// Buffer feasibility straight from the state recurrence.
inline bool reference_feasible(const Instance& inst, const Grid<int>& x) {
  for (std::size_t c = 0; c < inst.converters.size(); ++c) {
    const Converter& conv = inst.converters[c];
    Q s = q(conv.soc_lower[0]);
    if (s < q(conv.soc_lower[0]) || s > q(conv.soc_upper[0])) return false;
    for (std::size_t t = 0; t < inst.horizon; ++t) {
      if (x(c, t) != 0 && x(c, t) != 1) return false;
      s += q(conv.heat) * x(c, t) - q(conv.demand[t]);
      if (s < q(conv.soc_lower[t + 1]) || s > q(conv.soc_upper[t + 1])) return false;
    }
  }
  return true;
}

inline Q reference_objective(const Instance& inst, const Grid<int>& x, ObjectiveKind kind) {
  std::vector<Q> load(inst.horizon);
  for (std::size_t t = 0; t < inst.horizon; ++t) {
    load[t] = kind == ObjectiveKind::Basic ? Q(0) : q(inst.base_load[t]);
    for (std::size_t c = 0; c < inst.converters.size(); ++c)
      load[t] += q(inst.converters[c].electricity) * x(c, t);
  }
  const Q hi = *std::max_element(load.begin(), load.end());
  const Q lo = *std::min_element(load.begin(), load.end());
  switch (kind) {
    case ObjectiveKind::Basic:
    case ObjectiveKind::Maximal: return hi;
    case ObjectiveKind::Absolute: return std::max(hi, Q(-lo));
    case ObjectiveKind::Fluctuation: return hi - lo;
  }
  return hi;
}

// Every binary schedule, row-major cell order, counting up.
template <typename F>
void for_each_binary(std::size_t C, std::size_t T, F&& visit) {
  const std::size_t cells = C * T;
  Grid<int> x(C, T);
  for (std::uint64_t code = 0; code < (std::uint64_t(1) << cells); ++code) {
    for (std::size_t k = 0; k < cells; ++k)
      x(k / T, k % T) = int((code >> (cells - 1 - k)) & 1);
    visit(x);
  }
}

inline std::vector<Grid<int>> reference_feasible_set(const Instance& inst) {
  std::vector<Grid<int>> out;
  for_each_binary(inst.converters.size(), inst.horizon, [&](const Grid<int>& x) {
    if (reference_feasible(inst, x)) out.push_back(x);
  });
  return out;
}

struct ReferenceOptimum {
  bool feasible = false;
  Q value;
};

inline ReferenceOptimum reference_optimum(const Instance& inst, ObjectiveKind kind) {
  ReferenceOptimum best;
  for_each_binary(inst.converters.size(), inst.horizon, [&](const Grid<int>& x) {
    if (!reference_feasible(inst, x)) return;
    Q v = reference_objective(inst, x, kind);
    if (!best.feasible || v < best.value) best = {true, v};
  });
  return best;
}

inline std::vector<double> loads(std::span<const double> e, const Grid<double>& y) {
  std::vector<double> out(y.cols(), 0.0);
  for (std::size_t c = 0; c < y.rows(); ++c)
    for (std::size_t t = 0; t < y.cols(); ++t) out[t] += e[c] * y(c, t);
  return out;
}

// Random small instances that are NOT planted: bounds, demands and heats are
// drawn independently, so many of them are infeasible. Values include
// halves and thirds to exercise rational floor/ceil.
struct RandomInstances {
  explicit RandomInstances(std::uint64_t seed) : rng(seed) {}

  std::int64_t draw(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
  }
  Scalar fraction(std::int64_t lo, std::int64_t hi) {
    const std::int64_t den = draw(1, 3);
    return Scalar(Rational(draw(lo * den, hi * den), den));
  }

  Instance next(std::size_t C, std::size_t T) {
    Instance inst;
    inst.horizon = T;
    for (std::size_t t = 0; t < T; ++t) inst.base_load.push_back(draw(-3, 3));
    for (std::size_t c = 0; c < C; ++c) {
      Converter conv;
      conv.id = "r" + std::to_string(c + 1);
      std::int64_t e = draw(1, 3);
      conv.electricity = draw(0, 1) ? e : -e;
      conv.heat = fraction(1, 3);
      const Scalar cap = fraction(1, 5);
      const Scalar start = fraction(0, 3);
      conv.soc_lower.push_back(start);
      conv.soc_upper.push_back(start);
      for (std::size_t t = 0; t < T; ++t) {
        conv.demand.push_back(fraction(0, 3));
        Scalar lo = fraction(0, 2);
        conv.soc_lower.push_back(lo);
        conv.soc_upper.push_back(lo + cap);
      }
      inst.converters.push_back(std::move(conv));
    }
    return inst;
  }

  std::mt19937_64 rng;
};

}  // namespace peakshave::testing
