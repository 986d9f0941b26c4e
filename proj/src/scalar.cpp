// Copyright 2026 The peakshave Authors
// SPDX-License-Identifier: Apache-2.0

#include "scalar.hpp"

#include "errors.hpp"

#include <charconv>
#include <cmath>
#include <limits>

namespace peakshave {
namespace {

using boost::multiprecision::cpp_int;

cpp_int parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) {
    throw ValidationError("malformed number '" + std::string(whole) + "'");
  }
  for (char ch : digits) {
    if (ch < '0' || ch > '9') {
      throw ValidationError("malformed number '" + std::string(whole) + "'");
    }
  }
  // cpp_int reads a leading 0 as an octal prefix.
  const auto first = digits.find_first_not_of('0');
  if (first == std::string_view::npos) return 0;
  return cpp_int(std::string(digits.substr(first)));
}

cpp_int pow10(unsigned k) {
  cpp_int r = 1;
  for (unsigned i = 0; i < k; ++i) r *= 10;
  return r;
}

Rational parse_decimal(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = s.substr(e + 1);
    if (exp_text.empty()) {
      throw ValidationError("malformed number '" + std::string(text) + "'");
    }
    auto [ptr, ec] = std::from_chars(
        exp_text.data() + (exp_text.front() == '+' ? 1 : 0),
        exp_text.data() + exp_text.size(), exponent);
    if (ec != std::errc() || ptr != exp_text.data() + exp_text.size() ||
        std::labs(exponent) > 1000) {
      throw ValidationError("malformed number '" + std::string(text) + "'");
    }
    s = s.substr(0, e);
  }
  std::string digits;
  long fraction_digits = 0;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    digits = std::string(s.substr(0, dot)) + std::string(s.substr(dot + 1));
    fraction_digits = long(s.size() - dot - 1);
  } else {
    digits = std::string(s);
  }
  cpp_int mantissa = parse_integer(digits, text);
  if (negative) mantissa = -mantissa;
  long scale = exponent - fraction_digits;
  if (scale >= 0) return Rational(mantissa * pow10(unsigned(scale)));
  return Rational(mantissa, pow10(unsigned(-scale)));
}

std::int64_t to_int64(const cpp_int& v) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min()) {
    throw ValidationError("value out of 64-bit range");
  }
  return static_cast<std::int64_t>(v);
}

cpp_int floor_div(const Rational& r) {
  const cpp_int& n = numerator(r);
  const cpp_int& d = denominator(r);  // always positive
  cpp_int q = n / d;                  // truncates toward zero
  if (n < 0 && q * d != n) q -= 1;
  return q;
}

std::int64_t snapped_floor(double v) {
  double nearest = std::nearbyint(v);
  if (std::fabs(v - nearest) <= kInexactTolerance) return std::int64_t(nearest);
  return std::int64_t(std::floor(v));
}

std::int64_t snapped_ceil(double v) {
  double nearest = std::nearbyint(v);
  if (std::fabs(v - nearest) <= kInexactTolerance) return std::int64_t(nearest);
  return std::int64_t(std::ceil(v));
}

}  // namespace

Scalar::Scalar(const Rational& r)
    : exact_(true), rational_(r), approx_(static_cast<double>(r)) {}

Scalar Scalar::inexact(double v) {
  Scalar s;
  s.exact_ = false;
  s.approx_ = v;
  return s;
}

Scalar Scalar::parse(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw ValidationError("empty number");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational num = parse_decimal(text.substr(0, slash));
    Rational den = parse_decimal(text.substr(slash + 1));
    if (den == 0) {
      throw ValidationError("zero denominator in '" + std::string(text) + "'");
    }
    return Scalar(num / den);
  }
  return Scalar(parse_decimal(text));
}

std::string Scalar::str() const {
  if (!exact_) return format_double(approx_);
  if (denominator(rational_) == 1) return numerator(rational_).str();
  return numerator(rational_).str() + "/" + denominator(rational_).str();
}

bool Scalar::is_zero() const { return sign() == 0; }

int Scalar::sign() const {
  if (exact_) return rational_.sign();
  if (std::fabs(approx_) <= kInexactTolerance) return 0;
  return approx_ > 0 ? 1 : -1;
}

std::int64_t Scalar::floor() const {
  if (exact_) return to_int64(floor_div(rational_));
  return snapped_floor(approx_);
}

std::int64_t Scalar::ceil() const {
  if (exact_) return to_int64(-floor_div(-rational_));
  return snapped_ceil(approx_);
}

Scalar Scalar::operator-() const {
  if (exact_) return Scalar(Rational(-rational_));
  return inexact(-approx_);
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  if (a.exact_ && b.exact_) return Scalar(Rational(a.rational_ + b.rational_));
  return Scalar::inexact(a.approx_ + b.approx_);
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  if (a.exact_ && b.exact_) return Scalar(Rational(a.rational_ - b.rational_));
  return Scalar::inexact(a.approx_ - b.approx_);
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (a.exact_ && b.exact_) return Scalar(Rational(a.rational_ * b.rational_));
  return Scalar::inexact(a.approx_ * b.approx_);
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  if (a.exact_ && b.exact_) return Scalar(Rational(a.rational_ / b.rational_));
  return Scalar::inexact(a.approx_ / b.approx_);
}

bool less_equal(const Scalar& a, const Scalar& b) {
  if (a.exact_ && b.exact_) return a.rational_ <= b.rational_;
  return a.approx_ <= b.approx_ + kInexactTolerance;
}

bool less(const Scalar& a, const Scalar& b) { return !less_equal(b, a); }

bool equal(const Scalar& a, const Scalar& b) {
  return less_equal(a, b) && less_equal(b, a);
}

std::string format_double(double v) {
  if (v == 0.0) return "0";  // folds -0
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace peakshave
