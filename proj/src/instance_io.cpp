// Copyright 2026 The peakshave Authors
// SPDX-License-Identifier: Apache-2.0

#include "instance_io.hpp"

#include "errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace peakshave {

using nlohmann::json;

Scalar scalar_from_json(const json& v, const std::string& where) {
  if (v.is_number_integer()) return Scalar(v.get<std::int64_t>());
  if (v.is_number_unsigned()) {
    auto u = v.get<std::uint64_t>();
    if (u > std::uint64_t(INT64_MAX)) throw ValidationError(where + ": integer too large");
    return Scalar(std::int64_t(u));
  }
  if (v.is_number_float()) return Scalar::inexact(v.get<double>());
  if (v.is_string()) {
    try {
      return Scalar::parse(v.get<std::string>());
    } catch (const ValidationError& e) {
      throw ValidationError(where + ": " + e.what());
    }
  }
  throw ValidationError(where + ": expected a number or a \"p/q\" string");
}

json scalar_to_json(const Scalar& v) {
  if (!v.is_exact()) return v.to_double();
  if (denominator(v.rational()) == 1 &&
      numerator(v.rational()) <= INT64_MAX && numerator(v.rational()) >= INT64_MIN)
    return static_cast<std::int64_t>(numerator(v.rational()));
  return v.str();
}

namespace {

const json& member(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError(where + ": missing \"" + key + "\"");
  return *it;
}

std::vector<Scalar> scalar_list(const json& arr, const std::string& where) {
  if (!arr.is_array()) throw ValidationError(where + ": expected an array");
  std::vector<Scalar> out;
  out.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i)
    out.push_back(scalar_from_json(arr[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

json scalar_list_to_json(const std::vector<Scalar>& v) {
  json arr = json::array();
  for (const auto& s : v) arr.push_back(scalar_to_json(s));
  return arr;
}

}  // namespace

Instance instance_from_json(const json& doc) {
  if (!doc.is_object()) throw ValidationError("instance: expected a JSON object");
  Instance inst;
  const json& T = member(doc, "T", "instance");
  if (!T.is_number_integer() || T.get<std::int64_t>() < 0)
    throw ValidationError("instance: \"T\" must be a non-negative integer");
  inst.horizon = T.get<std::size_t>();
  inst.base_load = scalar_list(member(doc, "base_load", "instance"), "base_load");
  const json& convs = member(doc, "converters", "instance");
  if (!convs.is_array()) throw ValidationError("instance: \"converters\" must be an array");
  for (std::size_t c = 0; c < convs.size(); ++c) {
    const json& obj = convs[c];
    const std::string where = "converters[" + std::to_string(c) + "]";
    if (!obj.is_object()) throw ValidationError(where + ": expected an object");
    Converter conv;
    if (auto it = obj.find("id"); it != obj.end()) {
      if (!it->is_string()) throw ValidationError(where + ".id: expected a string");
      conv.id = it->get<std::string>();
    } else {
      conv.id = "c" + std::to_string(c + 1);
    }
    conv.electricity = scalar_from_json(member(obj, "E", where), where + ".E");
    conv.heat = scalar_from_json(member(obj, "H", where), where + ".H");
    conv.demand = scalar_list(member(obj, "demand", where), where + ".demand");
    conv.soc_lower = scalar_list(member(obj, "soc_lower", where), where + ".soc_lower");
    conv.soc_upper = scalar_list(member(obj, "soc_upper", where), where + ".soc_upper");
    inst.converters.push_back(std::move(conv));
  }
  return inst;
}

Instance parse_instance(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("instance is not valid JSON: ") + e.what());
  }
  return instance_from_json(doc);
}

json instance_to_json(const Instance& inst) {
  json convs = json::array();
  for (const auto& c : inst.converters) {
    convs.push_back({{"id", c.id},
                     {"E", scalar_to_json(c.electricity)},
                     {"H", scalar_to_json(c.heat)},
                     {"demand", scalar_list_to_json(c.demand)},
                     {"soc_lower", scalar_list_to_json(c.soc_lower)},
                     {"soc_upper", scalar_list_to_json(c.soc_upper)}});
  }
  return {{"T", inst.horizon},
          {"base_load", scalar_list_to_json(inst.base_load)},
          {"converters", std::move(convs)}};
}

GeneratedInstance generate_instance(std::size_t converters, std::size_t horizon,
                                    std::uint64_t seed, const GenProfile& profile) {
  if (converters == 0 || horizon == 0)
    throw std::invalid_argument("generate_instance: C and T must be at least 1");
  std::mt19937_64 rng(seed);
  auto draw = [&rng](std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
  };

  const std::size_t T = horizon;
  GeneratedInstance out;
  Instance& inst = out.instance;
  inst.horizon = T;
  out.planted = Grid<int>(converters, T);

  for (std::size_t c = 0; c < converters; ++c) {
    Converter conv;
    conv.id = "c" + std::to_string(c + 1);
    std::int64_t heat = draw(1, 3);
    std::int64_t e = draw(1, 3);
    if (!profile.positive_only && draw(0, 1) == 1) e = -e;
    conv.electricity = e;
    conv.heat = heat;
    std::int64_t capacity = draw(heat, 3 * heat);
    std::int64_t charge = profile.force_run ? 0 : draw(0, capacity);
    const std::int64_t initial = charge;

    for (std::size_t t = 0; t < T; ++t) {
      int run = int(draw(0, 1));
      if (profile.force_run && t + 1 == T) run = 1;
      out.planted(c, t) = run;
      std::int64_t reachable = std::min(capacity, charge + heat * run);
      std::int64_t floor = (profile.force_run && t + 1 == T) ? 1 : 0;
      std::int64_t next = draw(floor, reachable);
      conv.demand.push_back(Scalar(charge + heat * run - next));
      charge = next;
    }
    conv.soc_lower.assign(T + 1, Scalar(0));
    conv.soc_upper.assign(T + 1, Scalar(capacity));
    conv.soc_lower[0] = conv.soc_upper[0] = Scalar(initial);
    if (profile.force_run) conv.soc_lower[T] = Scalar(charge);
    inst.converters.push_back(std::move(conv));
  }

  inst.base_load.assign(T, Scalar(0));
  if (profile.base_load == GenProfile::BaseLoad::Diurnal) {
    const double period = double(std::max<std::size_t>(T, 4));
    const std::int64_t amplitude = draw(1, 2 * std::int64_t(converters));
    const std::int64_t offset = draw(0, std::int64_t(period) - 1);
    for (std::size_t t = 0; t < T; ++t) {
      double phase = 2.0 * std::numbers::pi * double(t + std::size_t(offset)) / period;
      inst.base_load[t] = Scalar(std::int64_t(std::lround(amplitude * std::sin(phase))));
    }
  }
  return out;
}

}  // namespace peakshave
