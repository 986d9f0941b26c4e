// Copyright 2026 The peakshave Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

namespace peakshave {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Relation { LessEqual, GreaterEqual, Equal };

struct LinearTerm {
  std::size_t var;
  double coef;
};

struct Constraint {
  std::vector<LinearTerm> terms;
  Relation relation = Relation::LessEqual;
  double rhs = 0.0;
  std::string name;
};

// minimize c'x subject to rows and lower <= x <= upper.
class LinearProgram {
 public:
  std::size_t add_variable(double lower, double upper, double cost,
                           std::string name);
  std::size_t add_constraint(Constraint row);

  std::size_t variable_count() const { return lower_.size(); }
  std::size_t constraint_count() const { return rows_.size(); }

  const std::vector<double>& lower() const { return lower_; }
  const std::vector<double>& upper() const { return upper_; }
  const std::vector<double>& cost() const { return cost_; }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<Constraint>& constraints() const { return rows_; }

  double objective_value(const std::vector<double>& x) const;
  // Largest bound or row violation of x.
  double max_violation(const std::vector<double>& x) const;

  // Throws std::invalid_argument when a row references an undeclared
  // variable or a variable has lower > upper.
  void check() const;

  // CPLEX-LP-like text, one constraint per line, fixed-point decimals.
  std::string to_text() const;

 private:
  std::vector<double> lower_, upper_, cost_;
  std::vector<std::string> names_;
  std::vector<Constraint> rows_;
};

}  // namespace peakshave
