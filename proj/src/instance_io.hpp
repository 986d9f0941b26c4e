// Copyright 2026 The peakshave Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "instance.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace peakshave {

// Instance document:
//   {"T": int, "base_load": [...], "converters": [{"id", "E", "H", "demand",
//    "soc_lower", "soc_upper"}]}
// Numbers may be JSON integers (exact), "p/q" or decimal strings (exact), or
// JSON floating point literals (inexact). Throws ValidationError.
Instance instance_from_json(const nlohmann::json& doc);
Instance parse_instance(std::string_view text);
nlohmann::json instance_to_json(const Instance& inst);

// Exact integers as JSON integers, other exact values as "p/q" strings,
// inexact values as JSON numbers.
nlohmann::json scalar_to_json(const Scalar& v);
Scalar scalar_from_json(const nlohmann::json& v, const std::string& where);

struct GenProfile {
  enum class BaseLoad { Zero, Diurnal };
  BaseLoad base_load = BaseLoad::Zero;
  bool positive_only = false;  // E_c in {1,2,3}
  bool force_run = false;      // every converter must run at least once
};

struct GeneratedInstance {
  Instance instance;
  Grid<int> planted;  // a schedule known to be feasible
};

// Plants a random schedule and derives demands so that it is feasible.
// Deterministic in (converters, horizon, seed, profile).
GeneratedInstance generate_instance(std::size_t converters, std::size_t horizon,
                                    std::uint64_t seed, const GenProfile& profile);

}  // namespace peakshave
