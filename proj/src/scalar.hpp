// Copyright 2026 The peakshave Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace peakshave {

using Rational = boost::multiprecision::cpp_rational;

// Tolerance used for floor/ceil and comparisons once a value has lost
// exactness (any operand came from a floating point literal).
inline constexpr double kInexactTolerance = 1e-9;

// A model quantity that stays an exact rational for as long as all of its
// inputs were exact, and degrades to a double otherwise.
class Scalar {
 public:
  Scalar() = default;
  Scalar(std::int64_t v) : exact_(true), rational_(v), approx_(double(v)) {}
  explicit Scalar(const Rational& r);

  static Scalar inexact(double v);
  // Accepts "-3", "7/4", "0.125", "1.5e-2".
  static Scalar parse(std::string_view text);

  bool is_exact() const { return exact_; }
  double to_double() const { return approx_; }
  // Precondition: is_exact().
  const Rational& rational() const { return rational_; }

  // Exact values print as "p" or "p/q"; inexact as the shortest decimal that
  // round-trips the double.
  std::string str() const;

  bool is_zero() const;
  int sign() const;

  // Rounding with the inexact snap: a double within kInexactTolerance of an
  // integer is treated as that integer.
  std::int64_t floor() const;
  std::int64_t ceil() const;

  Scalar operator-() const;
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }

  // Ordering; inexact comparisons treat values within kInexactTolerance as
  // equal.
  friend bool less_equal(const Scalar& a, const Scalar& b);
  friend bool less(const Scalar& a, const Scalar& b);
  friend bool equal(const Scalar& a, const Scalar& b);

 private:
  bool exact_ = true;
  Rational rational_ = 0;
  double approx_ = 0.0;
};

// Shortest round-trip decimal representation of a double.
std::string format_double(double v);

}  // namespace peakshave
