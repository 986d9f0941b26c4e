// Copyright 2026 The peakshave Authors
// SPDX-License-Identifier: Apache-2.0

#include "linear_program.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace peakshave {

std::size_t LinearProgram::add_variable(double lower, double upper, double cost,
                                        std::string name) {
  lower_.push_back(lower);
  upper_.push_back(upper);
  cost_.push_back(cost);
  names_.push_back(std::move(name));
  return lower_.size() - 1;
}

std::size_t LinearProgram::add_constraint(Constraint row) {
  rows_.push_back(std::move(row));
  return rows_.size() - 1;
}

double LinearProgram::objective_value(const std::vector<double>& x) const {
  double v = 0.0;
  for (std::size_t j = 0; j < cost_.size(); ++j) v += cost_[j] * x[j];
  return v;
}

double LinearProgram::max_violation(const std::vector<double>& x) const {
  double worst = 0.0;
  for (std::size_t j = 0; j < lower_.size(); ++j) {
    worst = std::max(worst, lower_[j] - x[j]);
    worst = std::max(worst, x[j] - upper_[j]);
  }
  for (const auto& row : rows_) {
    double activity = 0.0;
    for (const auto& term : row.terms) activity += term.coef * x[term.var];
    if (row.relation != Relation::GreaterEqual)
      worst = std::max(worst, activity - row.rhs);
    if (row.relation != Relation::LessEqual)
      worst = std::max(worst, row.rhs - activity);
  }
  return worst;
}

void LinearProgram::check() const {
  for (std::size_t j = 0; j < lower_.size(); ++j)
    if (!(lower_[j] <= upper_[j]))
      throw std::invalid_argument("variable " + names_[j] + " has lower > upper");
  for (std::size_t i = 0; i < rows_.size(); ++i)
    for (const auto& term : rows_[i].terms)
      if (term.var >= lower_.size())
        throw std::invalid_argument("constraint " + std::to_string(i) +
                                    " references undeclared variable " +
                                    std::to_string(term.var));
}

namespace {

std::string fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", v + 0.0);  // no "-0.000000000"
  return buf;
}

std::string signed_term(double coef, const std::string& name) {
  return (coef < 0 ? " - " : " + ") + fixed(std::fabs(coef)) + " " + name;
}

}  // namespace

std::string LinearProgram::to_text() const {
  std::string out = "Minimize\n obj:";
  for (std::size_t j = 0; j < cost_.size(); ++j)
    if (cost_[j] != 0.0) out += signed_term(cost_[j], names_[j]);
  out += "\nSubject To\n";
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const auto& row = rows_[i];
    out += " " + (row.name.empty() ? "r" + std::to_string(i) : row.name) + ":";
    for (const auto& term : row.terms) out += signed_term(term.coef, names_[term.var]);
    switch (row.relation) {
      case Relation::LessEqual: out += " <= "; break;
      case Relation::GreaterEqual: out += " >= "; break;
      case Relation::Equal: out += " = "; break;
    }
    out += fixed(row.rhs) + "\n";
  }
  out += "Bounds\n";
  for (std::size_t j = 0; j < lower_.size(); ++j) {
    if (std::isinf(lower_[j]) && std::isinf(upper_[j])) {
      out += " " + names_[j] + " free\n";
      continue;
    }
    out += " ";
    out += std::isinf(lower_[j]) ? "-inf" : fixed(lower_[j]);
    out += " <= " + names_[j] + " <= ";
    out += std::isinf(upper_[j]) ? "+inf" : fixed(upper_[j]);
    out += "\n";
  }
  out += "End\n";
  return out;
}

}  // namespace peakshave
