// Copyright 2026 The peakshave Authors
// SPDX-License-Identifier: Apache-2.0

#include "certificate.hpp"
#include "errors.hpp"
#include "rounding.hpp"
#include "support/fixtures.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

using namespace peakshave;
using namespace peakshave::testing;

namespace {

RelaxedSolution relaxed(std::size_t C, std::size_t T, std::initializer_list<double> v) {
  Grid<double> y(C, T);
  auto it = v.begin();
  for (std::size_t c = 0; c < C; ++c)
    for (std::size_t t = 0; t < T; ++t) y(c, t) = *it++;
  return RelaxedSolution(std::move(y), 0.0);
}

// Direct check of the peel property: once the classes after step i are
// removed, class i has at most one time neighbour that still touches another
// class, and the anchor is exactly that neighbour.
bool reference_peel_ok(const NonIntegralityGraph& g, const PeelOrder& order) {
  std::set<std::size_t> seen;
  for (const auto& step : order) seen.insert(step.class_index);
  if (seen.size() != g.classes().size() || order.size() != g.classes().size()) return false;
  std::set<std::size_t> alive;
  for (const auto& step : order) {
    alive.insert(step.class_index);
  }
  for (std::size_t i = order.size(); i-- > 0;) {
    const auto& step = order[i];
    std::vector<std::size_t> inner;
    for (std::size_t t : g.class_vertex(step.class_index).times) {
      std::size_t degree = 0;
      for (std::size_t k : g.classes_at(t)) degree += alive.count(k);
      if (degree >= 2) inner.push_back(t);
    }
    if (inner.size() > 1) return false;
    if (inner.empty() != !step.anchor.has_value()) return false;
    if (!inner.empty() && *step.anchor != inner[0]) return false;
    alive.erase(step.class_index);
  }
  return true;
}

struct RoundingCheck {
  bool binary = true;
  std::size_t sandwich = 0;
  double deviation = 0;
};

RoundingCheck inspect(const Grid<int>& x, const RelaxedSolution& z, std::span<const double> e) {
  RoundingCheck out;
  for (std::size_t c = 0; c < z.converters(); ++c) {
    int run = 0;
    for (std::size_t t = 0; t < z.horizon(); ++t) {
      out.binary &= x(c, t) == 0 || x(c, t) == 1;
      run += x(c, t);
      if (run < std::floor(z.prefix(c, t)) || run > std::ceil(z.prefix(c, t))) ++out.sandwich;
    }
  }
  const auto target = z.converter_load(e);
  const auto got = loads(e, to_real(x));
  for (std::size_t t = 0; t < z.horizon(); ++t)
    out.deviation = std::max(out.deviation, std::fabs(got[t] - target[t]));
  return out;
}

double max_abs(std::span<const double> e) {
  double m = 0;
  for (double v : e) m = std::max(m, std::fabs(v));
  return m;
}

}  // namespace

TEST_CASE("peel order of small forests") {
  CHECK(peel_order(build_graph(relaxed(1, 2, {1, 0}))).empty());

  const NonIntegralityGraph single = build_graph(relaxed(1, 2, {0.5, 0.5}));
  const PeelOrder one = peel_order(single);
  REQUIRE(one.size() == 1);
  CHECK_FALSE(one[0].anchor.has_value());

  // t1 - (c1,W1) - t2 - (c2,W2) - t3
  const RelaxedSolution path = relaxed(2, 3, {0.5, 0.5, 0, 0, 0.5, 0.5});
  const NonIntegralityGraph g = build_graph(path);
  REQUIRE(g.classes().size() == 2);
  const PeelOrder order = peel_order(g);
  REQUIRE(order.size() == 2);
  CHECK(order[0].class_index == 1);
  CHECK_FALSE(order[0].anchor.has_value());
  CHECK(order[1].class_index == 0);
  REQUIRE(order[1].anchor.has_value());
  CHECK(*order[1].anchor == 1);
  CHECK(peel_order_holds(g, order));
  CHECK(reference_peel_ok(g, order));

  CHECK_THROWS_AS(peel_order(build_graph(relaxed(2, 2, {0.5, 0.5, 0.5, 0.5}))), InternalError);
}

TEST_CASE("rounding a single fractional class") {
  const RelaxedSolution z = relaxed(1, 2, {0.5, 0.5});
  const NonIntegralityGraph g = build_graph(z);
  const std::vector<double> e{2};
  const Grid<int> x = round_solution(e, z, g, peel_order(g));
  CHECK(x.data() == std::vector<int>{1, 0});
  const RoundingCheck check = inspect(x, z, e);
  CHECK(check.sandwich == 0);
  CHECK(check.deviation == doctest::Approx(1.0));
}

TEST_CASE("rounding leaves binary points alone") {
  const RelaxedSolution z = relaxed(2, 3, {1, 0, 1, 0, 1, 1});
  const NonIntegralityGraph g = build_graph(z);
  const Grid<int> x = round_solution(std::vector<double>{1, -2}, z, g, peel_order(g));
  CHECK(x.data() == std::vector<int>{1, 0, 1, 0, 1, 1});
}

TEST_CASE("approximate_solve on the small instances") {
  const ApproximateSolution one = approximate_solve(instance_one(), ObjectiveKind::Maximal);
  CHECK(one.schedule.objective == doctest::Approx(2.0));
  CHECK(one.schedule.gap == doctest::Approx(0.0).epsilon(1e-9));

  const ApproximateSolution flat = approximate_solve(instance_one(), ObjectiveKind::Fluctuation);
  CHECK(flat.schedule.objective == doctest::Approx(0.0));
  CHECK(flat.schedule.x.data() == std::vector<int>{1, 1});

  const ApproximateSolution two = approximate_solve(instance_two(), ObjectiveKind::Maximal);
  CHECK(two.schedule.lp_bound == doctest::Approx(1.0));
  CHECK((two.schedule.objective == 1.0 || two.schedule.objective == 2.0));
  CHECK(two.schedule.gap <= 1.0 + 1e-9);
  CHECK(check_feasible(instance_two(), two.schedule.x));
}

TEST_CASE("approximate_solve rejects bad input") {
  Instance stuck = instance_one();
  stuck.converters[0].soc_lower[1] = 5;
  stuck.converters[0].soc_upper[1] = 6;
  CHECK_THROWS_AS(approximate_solve(stuck, ObjectiveKind::Maximal), InfeasibleError);

  Instance zero = instance_two();
  zero.converters[0].electricity = 0;
  CHECK_THROWS_AS(approximate_solve(zero, ObjectiveKind::Maximal), ValidationError);
}

TEST_CASE("rounding guarantees on reduced random points") {
  std::mt19937_64 rng(31337);
  auto draw = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  int anchored = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    const std::size_t C = std::size_t(draw(1, 5)), T = std::size_t(draw(1, 7));
    const int den = draw(2, 5);
    Grid<double> v(C, T);
    for (std::size_t c = 0; c < C; ++c)
      for (double& cell : v.row(c))
        cell = draw(0, 2) ? double(draw(0, den)) / den : double(draw(0, 1));
    std::vector<double> e(C);
    for (double& x : e) x = double(draw(1, 3)) * (draw(0, 1) ? 1 : -1);
    const RelaxedSolution y(std::move(v), 0.0);
    CAPTURE(trial);

    const ForestReduction red = reduce_to_forest(y, e);
    const NonIntegralityGraph g = build_graph(red.solution);
    const PeelOrder order = peel_order(g);
    CHECK(peel_order_holds(g, order));
    CHECK(reference_peel_ok(g, order));
    for (const auto& step : order) anchored += step.anchor.has_value();

    const Grid<int> x = round_solution(e, red.solution, g, order);
    const RoundingCheck against_z = inspect(x, red.solution, e);
    CHECK(against_z.binary);
    CHECK(against_z.sandwich == 0);
    CHECK(against_z.deviation <= max_abs(e) + 1e-9);

    const RoundingCheck against_y = inspect(x, y, e);
    CHECK(against_y.sandwich == 0);
    CHECK(against_y.deviation <= max_abs(e) + 1e-9);
  }
  CHECK(anchored > 500);
}

TEST_CASE("end-to-end bound against the exhaustive optimum") {
  RandomInstances gen(555);
  int solved = 0;
  for (int trial = 0; trial < 600; ++trial) {
    const std::size_t C = std::size_t(gen.draw(1, 3)), T = std::size_t(gen.draw(1, 4));
    const Instance inst = gen.next(C, T);
    if (!validate_instance(inst).passed()) continue;
    const auto kind = static_cast<ObjectiveKind>(trial % 4);
    const ReferenceOptimum best = reference_optimum(inst, kind);
    CAPTURE(trial);
    if (!best.feasible) {
      CHECK_THROWS_AS(approximate_solve(inst, kind), InfeasibleError);
      continue;
    }
    const ApproximateSolution a = approximate_solve(inst, kind);
    CHECK(reference_feasible(inst, a.schedule.x));
    const double exact = reference_objective(inst, a.schedule.x, kind).convert_to<double>();
    CHECK(a.schedule.objective == doctest::Approx(exact).epsilon(1e-12));
    const double optimum = best.value.convert_to<double>();
    CHECK(a.schedule.lp_bound <= optimum + 1e-9);
    CHECK(a.schedule.objective - optimum <= error_bound(inst, kind) + 1e-6);
    CHECK(a.schedule.gap <= error_bound(inst, kind) + 1e-6);

    const CertificateCheck cert = check_certificates(inst, kind, a.schedule.x, a.relaxed);
    CHECK(cert.passed(kCertificateTolerance));
    ++solved;
  }
  CHECK(solved > 100);
}
