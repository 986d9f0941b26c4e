// Copyright 2026 The peakshave Authors
// SPDX-License-Identifier: Apache-2.0

#include "errors.hpp"
#include "instance.hpp"
#include "instance_io.hpp"
#include "support/fixtures.hpp"

#include <doctest.h>

using namespace peakshave;
using namespace peakshave::testing;

namespace {

Grid<int> row(std::initializer_list<int> v) {
  Grid<int> x(1, v.size());
  std::size_t t = 0;
  for (int b : v) x(0, t++) = b;
  return x;
}

Grid<int> rows2(std::initializer_list<int> a, std::initializer_list<int> b) {
  Grid<int> x(2, a.size());
  std::size_t t = 0;
  for (int v : a) x(0, t++) = v;
  t = 0;
  for (int v : b) x(1, t++) = v;
  return x;
}

std::vector<std::string> states(const Grid<Scalar>& s) {
  std::vector<std::string> out;
  for (const auto& v : s.data()) out.push_back(v.str());
  return out;
}

bool has_code(const ValidationReport& r, ValidationIssue::Code code) {
  for (const auto& i : r.issues)
    if (i.code == code) return true;
  return false;
}

}  // namespace

TEST_CASE("instance ONE and TWO validate") {
  CHECK(validate_instance(instance_one()).passed());
  CHECK(validate_instance(instance_two()).passed());
}

TEST_CASE("validation flags an unfixed initial charge") {
  Instance inst = instance_one();
  inst.converters[0].soc_upper[0] = 1;
  auto report = validate_instance(inst);
  CHECK_FALSE(report.passed());
  CHECK(has_code(report, ValidationIssue::Code::InitialChargeNotFixed));
  CHECK(report.summary().find("initial SoC not fixed") != std::string::npos);
}

TEST_CASE("validation rejects zero electricity with a split-off advisory") {
  Instance inst = instance_two();
  inst.converters[1].electricity = 0;
  auto report = validate_instance(inst);
  CHECK_FALSE(report.passed());
  CHECK(report.only_zero_electricity());
  CHECK(report.summary().find("split it off") != std::string::npos);
}

TEST_CASE("validation reports shape and sign problems with locations") {
  Instance inst = instance_two();
  inst.base_load.pop_back();
  inst.converters[0].heat = 0;
  inst.converters[1].demand[1] = -1;
  inst.converters[1].soc_lower[2] = 5;
  auto report = validate_instance(inst);
  CHECK(has_code(report, ValidationIssue::Code::BaseLoadLength));
  CHECK(has_code(report, ValidationIssue::Code::NonPositiveHeat));
  CHECK(has_code(report, ValidationIssue::Code::NegativeDemand));
  CHECK(has_code(report, ValidationIssue::Code::BoundsCrossed));
  CHECK_FALSE(report.only_zero_electricity());
  for (const auto& issue : report.issues)
    if (issue.code == ValidationIssue::Code::NegativeDemand) {
      CHECK(issue.converter == 1u);
      CHECK(issue.interval == 1u);
    }

  Instance empty;
  CHECK(has_code(validate_instance(empty), ValidationIssue::Code::EmptyHorizon));
  CHECK(has_code(validate_instance(empty), ValidationIssue::Code::NoConverters));
}

TEST_CASE("simulate_states on instance ONE") {
  const Instance inst = instance_one();
  CHECK(states(simulate_states(inst, row({1, 0}))) == std::vector<std::string>{"0", "0", "0"});
  CHECK(states(simulate_states(inst, row({1, 1}))) == std::vector<std::string>{"0", "0", "1"});

  Instance idle = inst;
  idle.converters[0].demand = ints({0, 0});
  idle.converters[0].soc_lower = idle.converters[0].soc_upper = ints({3, 3, 3});
  CHECK(states(simulate_states(idle, row({0, 0}))) == std::vector<std::string>{"3", "3", "3"});

  CHECK_THROWS_AS(simulate_states(inst, Grid<int>(2, 2)), std::invalid_argument);
}

TEST_CASE("check_feasible on instance ONE") {
  const Instance inst = instance_one();
  CHECK(check_feasible(inst, row({1, 0})));
  CHECK(check_feasible(inst, row({1, 1})));
  CHECK_FALSE(check_feasible(inst, row({0, 1})));
  CHECK_FALSE(check_feasible(inst, row({0, 0})));

  auto v = feasibility_violations(inst, row({0, 1}));
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == FeasibilityViolation::Kind::BelowLower);
  CHECK(v[0].converter == 0u);
  CHECK(v[0].index == 1u);

  CHECK_FALSE(check_feasible(inst, row({2, 0})));
}

TEST_CASE("reformulate instance ONE") {
  const PrefixBounds b = reformulate(instance_one());
  CHECK(b.lower.data() == std::vector<std::int64_t>{1, 1});
  CHECK(b.upper.data() == std::vector<std::int64_t>{1, 2});

  std::vector<Grid<int>> expected = {row({1, 0}), row({1, 1})};
  CHECK(reference_feasible_set(instance_one()) == expected);
}

TEST_CASE("reformulate instance TWO") {
  const PrefixBounds b = reformulate(instance_two());
  CHECK(b.lower.data() == std::vector<std::int64_t>{0, 1, 0, 1});
  CHECK(b.upper.data() == std::vector<std::int64_t>{1, 1, 1, 1});
  // Brute force: each converter runs exactly once.
  auto set = reference_feasible_set(instance_two());
  CHECK(set.size() == 4);
  for (const auto& x : set) {
    CHECK(x(0, 0) + x(0, 1) == 1);
    CHECK(x(1, 0) + x(1, 1) == 1);
  }
}

TEST_CASE("reformulate with zero demand gives zero lower bounds") {
  Instance inst;
  inst.horizon = 3;
  inst.base_load = ints({0, 0, 0});
  inst.converters.push_back(converter("a", 1, 2, {0, 0, 0}, {0, 0, 0, 0}, {0, 4, 4, 4}));
  const PrefixBounds b = reformulate(inst);
  for (auto v : b.lower.data()) CHECK(v == 0);
  // Clipped at t.
  CHECK(b.upper.data() == std::vector<std::int64_t>{1, 2, 2});
}

TEST_CASE("reformulate throws when some bound pair is empty") {
  Instance inst = instance_one();
  inst.converters[0].demand = ints({3, 0});  // needs three runs in one interval
  CHECK_THROWS_AS(reformulate(inst), InfeasibleError);
  auto b = compute_prefix_bounds(inst);
  REQUIRE(b.first_empty_cell().has_value());
  CHECK(b.first_empty_cell()->second == 0u);
}

TEST_CASE("evaluate_objective examples") {
  const Instance one = instance_one();
  CHECK(evaluate_objective(one, row({1, 0}), ObjectiveKind::Maximal) == 2.0);
  CHECK(evaluate_objective(one, row({1, 1}), ObjectiveKind::Fluctuation) == 0.0);
  const Instance two = instance_two();
  CHECK(evaluate_objective(two, rows2({1, 0}, {0, 1}), ObjectiveKind::Maximal) == 1.0);
  CHECK(evaluate_objective_exact(two, rows2({1, 0}, {0, 1}), ObjectiveKind::Maximal).str() == "1");
}

TEST_CASE("Basic equals Maximal with the base load zeroed") {
  RandomInstances gen(11);
  for (int round = 0; round < 200; ++round) {
    Instance inst = gen.next(2, 3);
    Instance zeroed = inst;
    zeroed.base_load.assign(3, Scalar(0));
    for_each_binary(2, 3, [&](const Grid<int>& x) {
      CHECK(evaluate_objective_exact(inst, x, ObjectiveKind::Basic).str() ==
            evaluate_objective_exact(zeroed, x, ObjectiveKind::Maximal).str());
    });
  }
}

TEST_CASE("Absolute dominates Maximal when every load is nonnegative") {
  RandomInstances gen(12);
  for (int round = 0; round < 200; ++round) {
    Instance inst = gen.next(2, 2);
    for_each_binary(2, 2, [&](const Grid<int>& x) {
      auto loads = interval_loads(inst, to_real(x));
      if (*std::min_element(loads.begin(), loads.end()) < 0) return;
      CHECK(evaluate_objective(inst, x, ObjectiveKind::Absolute) >=
            evaluate_objective(inst, x, ObjectiveKind::Maximal));
    });
  }
}

TEST_CASE("exact objective agrees with the reference evaluation") {
  RandomInstances gen(13);
  for (int round = 0; round < 100; ++round) {
    Instance inst = gen.next(2, 3);
    for_each_binary(2, 3, [&](const Grid<int>& x) {
      for (auto kind : kAllObjectives) {
        Scalar v = evaluate_objective_exact(inst, x, kind);
        REQUIRE(v.is_exact());
        CHECK(v.rational() == reference_objective(inst, x, kind));
      }
    });
  }
}

TEST_CASE("round trip: check_feasible iff running counts inside the bounds") {
  // Exhaustive over every binary schedule; odd rounds use planted instances
  // so that plenty of schedules are feasible.
  RandomInstances gen(14);
  const std::pair<std::size_t, std::size_t> shapes[] = {{1, 4}, {2, 3}, {2, 4}, {4, 2}, {3, 4}, {2, 6}};
  std::size_t feasible_seen = 0;
  for (auto [C, T] : shapes) {
    for (int round = 0; round < 12; ++round) {
      Instance inst = round % 2 ? generate_instance(C, T, std::uint64_t(round), {}).instance
                                : gen.next(C, T);
      REQUIRE(validate_instance(inst).passed());
      const PrefixBounds b = compute_prefix_bounds(inst);
      for_each_binary(C, T, [&](const Grid<int>& x) {
        const bool direct = check_feasible(inst, x);
        CHECK(direct == reference_feasible(inst, x));
        CHECK(direct == b.admits(x));
        feasible_seen += direct;
      });
    }
  }
  CHECK(feasible_seen > 1000);
}

TEST_CASE("prefix bounds are integral and clipped to [0, t]") {
  RandomInstances gen(15);
  for (int round = 0; round < 300; ++round) {
    const PrefixBounds b = compute_prefix_bounds(gen.next(3, 5));
    for (std::size_t c = 0; c < 3; ++c)
      for (std::size_t t = 0; t < 5; ++t) {
        CHECK(b.lower(c, t) >= 0);
        CHECK(b.upper(c, t) <= std::int64_t(t + 1));
      }
  }
}

TEST_CASE("inexact inputs snap near-integers before floor and ceil") {
  Instance inst = instance_one();
  inst.converters[0].demand[0] = Scalar::inexact(0.1 + 0.2 + 0.7);  // 1.0000000000000002
  const PrefixBounds b = reformulate(inst);
  CHECK(b.lower.data() == std::vector<std::int64_t>{1, 1});
  CHECK(b.upper.data() == std::vector<std::int64_t>{1, 2});
}

TEST_CASE("scalar parsing keeps rationals exact") {
  CHECK(Scalar::parse("7/4").str() == "7/4");
  CHECK(Scalar::parse("-3").str() == "-3");
  CHECK(Scalar::parse("0.125").str() == "1/8");
  CHECK(Scalar::parse("1.5e-2").str() == "3/200");
  CHECK(Scalar::parse("6/4").str() == "3/2");
  CHECK(Scalar::parse("010").str() == "10");
  CHECK(Scalar::parse("3/08").str() == "3/8");
  CHECK(Scalar::parse("0.0").str() == "0");
  CHECK(Scalar::parse("7/4").floor() == 1);
  CHECK(Scalar::parse("-7/4").floor() == -2);
  CHECK(Scalar::parse("-7/4").ceil() == -1);
  CHECK_THROWS(Scalar::parse("1/0"));
  CHECK_THROWS(Scalar::parse("abc"));
  CHECK(Scalar::inexact(2.9999999999).ceil() == 3);
  CHECK(Scalar::inexact(2.9999999999).floor() == 3);
  CHECK(Scalar::inexact(2.5).floor() == 2);
}

TEST_CASE("instance JSON round trip") {
  Instance inst = instance_two();
  inst.converters[0].heat = Scalar::parse("3/2");
  inst.base_load[1] = Scalar::inexact(0.25);
  const std::string text = instance_to_json(inst).dump();
  const Instance back = parse_instance(text);
  CHECK(instance_to_json(back).dump() == text);
  CHECK(back.converters[0].heat.str() == "3/2");
  CHECK_FALSE(back.base_load[1].is_exact());

  CHECK_THROWS_AS(parse_instance("{\"T\": 2}"), ValidationError);
  CHECK_THROWS_AS(parse_instance("not json"), ValidationError);
}

TEST_CASE("generated instances are feasible and deterministic") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    for (auto base : {GenProfile::BaseLoad::Zero, GenProfile::BaseLoad::Diurnal}) {
      GenProfile profile;
      profile.base_load = base;
      profile.force_run = seed % 2 == 0;
      auto g = generate_instance(3, 5, seed, profile);
      CHECK(validate_instance(g.instance).passed());
      CHECK(reference_feasible(g.instance, g.planted));
      CHECK(check_feasible(g.instance, g.planted));
      auto again = generate_instance(3, 5, seed, profile);
      CHECK(instance_to_json(again.instance).dump() == instance_to_json(g.instance).dump());
    }
  }
  auto g = generate_instance(2, 2, 7, {});
  CHECK(check_feasible(g.instance, g.planted));
  auto single = generate_instance(1, 1, 12345, {});
  CHECK(single.instance.horizon == 1);
  CHECK(check_feasible(single.instance, single.planted));
}

TEST_CASE("force_run makes every converter run at least once") {
  GenProfile profile;
  profile.positive_only = true;
  profile.force_run = true;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto g = generate_instance(3, 4, seed, profile);
    for (const auto& c : g.instance.converters) {
      CHECK(c.electricity.sign() > 0);
      CHECK(less(c.soc_upper[0], c.soc_lower[4]));
    }
    for (const auto& x : reference_feasible_set(g.instance))
      for (std::size_t c = 0; c < 3; ++c)
        CHECK(x(c, 0) + x(c, 1) + x(c, 2) + x(c, 3) >= 1);
  }
}

TEST_CASE("zero-electricity converters are split off and scheduled lazily") {
  Instance inst = instance_two();
  inst.converters.push_back(converter("z", 0, 1, {0, 2}, {0, 0, 0}, {0, 1, 0}));
  auto split = split_zero_electricity(inst);
  CHECK(split.core.converters.size() == 2);
  CHECK(split.zero_index == std::vector<std::size_t>{2});
  // Needs two runs by t=2 and at most one per interval: the lazy rule has to
  // start at t=1 already.
  REQUIRE(split.zero_schedules.size() == 1);
  CHECK(split.zero_schedules[0] == std::vector<int>{1, 1});

  Grid<int> core(2, 2);
  core(0, 0) = 1;
  core(1, 1) = 1;
  Grid<int> merged = merge_split_schedule(split, core);
  CHECK(merged.rows() == 3);
  CHECK(merged(2, 0) == 1);
  CHECK(merged(2, 1) == 1);
  CHECK(check_feasible(inst, merged));

  CHECK(lazy_schedule(std::vector<std::int64_t>{0, 0, 2}, std::vector<std::int64_t>{1, 2, 2}) ==
        std::vector<int>{0, 1, 1});
  const std::int64_t lower[] = {0, 0, 3};
  const std::int64_t upper[] = {1, 1, 3};
  CHECK_THROWS_AS(lazy_schedule(lower, upper), InfeasibleError);
}
