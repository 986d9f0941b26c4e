// Copyright 2026 The peakshave Authors
// SPDX-License-Identifier: Apache-2.0

#include "simplex.hpp"

#include <Eigen/OrderingMethods>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <utility>

namespace peakshave {

std::string_view to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::IterationLimit: return "iteration_limit";
  }
  return "?";
}

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

// Row-merged view of the program: each distinct coefficient vector becomes a
// single ranged row lo <= a'x <= up.
struct RangedRows {
  std::vector<std::vector<LinearTerm>> terms;
  std::vector<double> lower, upper;
  bool contradictory = false;
};

RangedRows merge_rows(const LinearProgram& lp, double tol) {
  RangedRows out;
  std::map<std::vector<std::pair<std::size_t, double>>, std::size_t> seen;
  for (const Constraint& row : lp.constraints()) {
    std::map<std::size_t, double> merged;
    for (const auto& term : row.terms) merged[term.var] += term.coef;
    std::vector<std::pair<std::size_t, double>> key;
    for (const auto& [var, coef] : merged)
      if (coef != 0.0) key.emplace_back(var, coef);

    double lo = -kInfinity, up = kInfinity;
    if (row.relation != Relation::GreaterEqual) up = row.rhs;
    if (row.relation != Relation::LessEqual) lo = row.rhs;

    if (key.empty()) {
      if (lo > tol || up < -tol) out.contradictory = true;
      continue;
    }
    auto [it, inserted] = seen.emplace(key, out.terms.size());
    if (inserted) {
      std::vector<LinearTerm> terms;
      for (const auto& [var, coef] : key) terms.push_back({var, coef});
      out.terms.push_back(std::move(terms));
      out.lower.push_back(lo);
      out.upper.push_back(up);
    } else {
      out.lower[it->second] = std::max(out.lower[it->second], lo);
      out.upper[it->second] = std::min(out.upper[it->second], up);
    }
  }
  for (std::size_t i = 0; i < out.terms.size(); ++i)
    if (out.lower[i] > out.upper[i] + tol) out.contradictory = true;
  return out;
}

enum class VarState { Basic, AtLower, AtUpper, Free };

struct Eta {
  std::size_t pos;
  double pivot;
  std::vector<std::pair<std::size_t, double>> entries;  // excluding pos
};

class RevisedSimplex {
 public:
  RevisedSimplex(const LinearProgram& lp, const RangedRows& rows,
                 const SimplexOptions& opt)
      : opt_(opt), n_(lp.variable_count()), m_(rows.terms.size()) {
    const std::size_t N = n_ + m_;
    lo_.resize(N);
    up_.resize(N);
    cost_.assign(N, 0.0);
    for (std::size_t j = 0; j < n_; ++j) {
      lo_[j] = lp.lower()[j];
      up_[j] = lp.upper()[j];
      cost_[j] = lp.cost()[j];
    }
    for (std::size_t i = 0; i < m_; ++i) {
      lo_[n_ + i] = rows.lower[i];
      up_[n_ + i] = rows.upper[i];
    }
    // Column storage of the structural part.
    std::vector<std::size_t> counts(n_, 0);
    for (const auto& r : rows.terms)
      for (const auto& t : r) ++counts[t.var];
    col_start_.assign(n_ + 1, 0);
    for (std::size_t j = 0; j < n_; ++j) col_start_[j + 1] = col_start_[j] + counts[j];
    row_index_.resize(col_start_[n_]);
    value_.resize(col_start_[n_]);
    std::vector<std::size_t> fill(col_start_.begin(), col_start_.end() - 1);
    for (std::size_t i = 0; i < m_; ++i)
      for (const auto& t : rows.terms[i]) {
        row_index_[fill[t.var]] = i;
        value_[fill[t.var]] = t.coef;
        ++fill[t.var];
      }

    x_.assign(N, 0.0);
    state_.resize(N);
    where_.assign(N, kNone);
    head_.resize(m_);
    for (std::size_t j = 0; j < n_; ++j) place_at_bound(j);
    place_free_columns();
    slack_basis();
  }

  LpSolution run() {
    LpSolution result;
    const std::size_t limit = opt_.max_iterations
                                  ? opt_.max_iterations
                                  : 20 * (n_ + m_) + 10000;
    refactor(result);
    std::size_t degenerate_streak = 0;
    bool fresh = true;  // basic values recomputed since the last pivot

    Eigen::VectorXd cb(m_), pi(m_), alpha(m_);
    while (true) {
      if (etas_.size() >= opt_.refactor_interval) {
        refactor(result);
        fresh = true;
      }
      bool phase_one = false;
      for (std::size_t i = 0; i < m_; ++i) {
        std::size_t var = head_[i];
        if (x_[var] < lo_[var] - opt_.feasibility_tol) {
          cb[i] = -1.0;
          phase_one = true;
        } else if (x_[var] > up_[var] + opt_.feasibility_tol) {
          cb[i] = 1.0;
          phase_one = true;
        } else {
          cb[i] = 0.0;
        }
      }
      if (!phase_one)
        for (std::size_t i = 0; i < m_; ++i) cb[i] = cost_[head_[i]];
      btran(cb, pi);

      const bool bland = degenerate_streak >= opt_.bland_after;
      auto [entering, direction] = price(pi, phase_one, bland);
      if (entering == kNone) {
        if (!fresh) {
          refactor(result);
          fresh = true;
          continue;
        }
        result.status = phase_one ? LpStatus::Infeasible : LpStatus::Optimal;
        break;
      }
      if (result.iterations >= limit) {
        result.status = LpStatus::IterationLimit;
        break;
      }

      ftran_column(entering, alpha);
      Step step = ratio_test(entering, direction, alpha, phase_one, bland);
      if (step.theta == kInfinity) {
        if (!fresh) {
          refactor(result);
          fresh = true;
          continue;
        }
        result.status = LpStatus::Unbounded;
        break;
      }

      ++result.iterations;
      if (phase_one) ++result.phase_one_iterations;
      degenerate_streak = step.theta <= 1e-12 ? degenerate_streak + 1 : 0;
      apply(entering, direction, alpha, step);
      fresh = false;
    }

    result.values.assign(x_.begin(), x_.begin() + std::ptrdiff_t(n_));
    result.objective = 0.0;
    for (std::size_t j = 0; j < n_; ++j) result.objective += cost_[j] * x_[j];
    return result;
  }

 private:
  struct Step {
    double theta = kInfinity;
    std::size_t leave_pos = kNone;  // kNone: bound flip of the entering var
    bool leave_at_upper = false;
  };

  void place_at_bound(std::size_t j) {
    if (std::isfinite(lo_[j])) {
      state_[j] = VarState::AtLower;
      x_[j] = lo_[j];
    } else if (std::isfinite(up_[j])) {
      state_[j] = VarState::AtUpper;
      x_[j] = up_[j];
    } else {
      state_[j] = VarState::Free;
    }
  }

  // A free column can start at any value. Each one is placed where the total
  // row infeasibility, as a function of that column alone, is smallest.
  void place_free_columns() {
    std::vector<double> activity(m_, 0.0);
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t k = col_start_[j]; k < col_start_[j + 1]; ++k)
        activity[row_index_[k]] += value_[k] * x_[j];

    for (std::size_t j = 0; j < n_; ++j) {
      if (state_[j] != VarState::Free) continue;
      std::vector<std::pair<double, double>> kinks;  // (value, slope increase)
      double slope = 0.0;
      for (std::size_t k = col_start_[j]; k < col_start_[j + 1]; ++k) {
        const std::size_t i = row_index_[k];
        const double a = value_[k], rest = activity[i] - a * x_[j];
        const double lo = lo_[n_ + i], up = up_[n_ + i];
        // Far to the left the row sits below lo when a > 0, above up when a < 0.
        if (a > 0 && std::isfinite(lo)) slope -= a;
        if (a < 0 && std::isfinite(up)) slope += a;
        if (std::isfinite(lo)) kinks.emplace_back((lo - rest) / a, std::fabs(a));
        if (std::isfinite(up)) kinks.emplace_back((up - rest) / a, std::fabs(a));
      }
      if (kinks.empty()) continue;
      std::sort(kinks.begin(), kinks.end());
      // The minimizers form [from, to]; keep the current value if it is one.
      double from = slope >= 0.0 ? -kInfinity : kInfinity, to = kInfinity;
      for (const auto& [v, rise] : kinks) {
        slope += rise;
        if (slope >= 0.0 && from == kInfinity) from = v;
        if (slope > 0.0) {
          to = v;
          break;
        }
      }
      const double best = std::clamp(x_[j], from, to);
      for (std::size_t k = col_start_[j]; k < col_start_[j + 1]; ++k)
        activity[row_index_[k]] += value_[k] * (best - x_[j]);
      x_[j] = best;
    }
  }

  void slack_basis() {
    for (std::size_t j = 0; j < n_ + m_; ++j) {
      if (state_[j] == VarState::Basic) {
        where_[j] = kNone;
        if (std::isfinite(lo_[j]) || std::isfinite(up_[j])) {
          bool upper = std::isfinite(up_[j]) &&
                       (!std::isfinite(lo_[j]) || x_[j] - lo_[j] > up_[j] - x_[j]);
          state_[j] = upper ? VarState::AtUpper : VarState::AtLower;
          x_[j] = upper ? up_[j] : lo_[j];
        } else {
          state_[j] = VarState::Free;
        }
      }
    }
    for (std::size_t i = 0; i < m_; ++i) {
      head_[i] = n_ + i;
      where_[n_ + i] = i;
      state_[n_ + i] = VarState::Basic;
    }
  }

  // Column j of [A  -I] as a dense vector.
  void load_column(std::size_t j, Eigen::VectorXd& v) const {
    v.setZero(Eigen::Index(m_));
    if (j < n_) {
      for (std::size_t k = col_start_[j]; k < col_start_[j + 1]; ++k)
        v[Eigen::Index(row_index_[k])] = value_[k];
    } else {
      v[Eigen::Index(j - n_)] = -1.0;
    }
  }

  double column_dot(std::size_t j, const Eigen::VectorXd& pi) const {
    if (j >= n_) return -pi[Eigen::Index(j - n_)];
    double s = 0.0;
    for (std::size_t k = col_start_[j]; k < col_start_[j + 1]; ++k)
      s += pi[Eigen::Index(row_index_[k])] * value_[k];
    return s;
  }

  void refactor(LpSolution& result) {
    ++result.refactorizations;
    for (int attempt = 0;; ++attempt) {
      std::vector<Eigen::Triplet<double>> triplets;
      for (std::size_t p = 0; p < m_; ++p) {
        std::size_t j = head_[p];
        if (j < n_) {
          for (std::size_t k = col_start_[j]; k < col_start_[j + 1]; ++k)
            triplets.emplace_back(int(row_index_[k]), int(p), value_[k]);
        } else {
          triplets.emplace_back(int(j - n_), int(p), -1.0);
        }
      }
      Eigen::SparseMatrix<double> basis{Eigen::Index(m_), Eigen::Index(m_)};
      basis.setFromTriplets(triplets.begin(), triplets.end());
      basis.makeCompressed();
      lu_.analyzePattern(basis);
      lu_.factorize(basis);
      etas_.clear();
      if (lu_.info() == Eigen::Success || attempt > 0) break;
      // Numerically singular basis: restart from the slack basis. Nonbasic
      // values are kept so progress made so far is not lost.
      slack_basis();
    }
    recompute_basic_values();
  }

  void recompute_basic_values() {
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(Eigen::Index(m_));
    for (std::size_t j = 0; j < n_ + m_; ++j) {
      if (state_[j] == VarState::Basic || x_[j] == 0.0) continue;
      if (j < n_) {
        for (std::size_t k = col_start_[j]; k < col_start_[j + 1]; ++k)
          rhs[Eigen::Index(row_index_[k])] -= value_[k] * x_[j];
      } else {
        rhs[Eigen::Index(j - n_)] += x_[j];
      }
    }
    Eigen::VectorXd xb;
    ftran(rhs, xb);
    for (std::size_t p = 0; p < m_; ++p) x_[head_[p]] = xb[Eigen::Index(p)];
  }

  void ftran(const Eigen::VectorXd& rhs, Eigen::VectorXd& out) const {
    out = lu_.solve(rhs);
    for (const Eta& eta : etas_) {
      double vr = out[Eigen::Index(eta.pos)] / eta.pivot;
      out[Eigen::Index(eta.pos)] = vr;
      if (vr == 0.0) continue;
      for (const auto& [i, a] : eta.entries) out[Eigen::Index(i)] -= a * vr;
    }
  }

  void ftran_column(std::size_t j, Eigen::VectorXd& out) const {
    Eigen::VectorXd col;
    load_column(j, col);
    ftran(col, out);
  }

  void btran(Eigen::VectorXd w, Eigen::VectorXd& out) const {
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
      double s = w[Eigen::Index(it->pos)];
      for (const auto& [i, a] : it->entries) s -= w[Eigen::Index(i)] * a;
      w[Eigen::Index(it->pos)] = s / it->pivot;
    }
    out = lu_.transpose().solve(w);
  }

  std::pair<std::size_t, int> price(const Eigen::VectorXd& pi, bool phase_one,
                                    bool bland) const {
    std::size_t best = kNone;
    int best_dir = 0;
    double best_score = 0.0;
    for (std::size_t j = 0; j < n_ + m_; ++j) {
      VarState s = state_[j];
      if (s == VarState::Basic || lo_[j] == up_[j]) continue;
      double d = (phase_one ? 0.0 : cost_[j]) - column_dot(j, pi);
      int dir = 0;
      if (d < -opt_.optimality_tol && s != VarState::AtUpper) dir = 1;
      else if (d > opt_.optimality_tol && s != VarState::AtLower) dir = -1;
      if (dir == 0) continue;
      if (bland) return {j, dir};
      if (std::fabs(d) > best_score) {
        best_score = std::fabs(d);
        best = j;
        best_dir = dir;
      }
    }
    return {best, best_dir};
  }

  Step ratio_test(std::size_t q, int dir, const Eigen::VectorXd& alpha,
                  bool phase_one, bool bland) const {
    const double ftol = opt_.feasibility_tol;
    std::vector<std::pair<std::size_t, double>> limit(m_, {kNone, kInfinity});
    double theta_min = kInfinity;
    for (std::size_t p = 0; p < m_; ++p) {
      double a = dir * alpha[Eigen::Index(p)];
      if (std::fabs(a) <= opt_.pivot_tol) continue;
      std::size_t var = head_[p];
      double v = x_[var];
      double t = kInfinity;
      bool to_upper = false;
      if (a > 0) {  // decreasing
        if (v > up_[var] + ftol) {
          t = (v - up_[var]) / a;
          to_upper = true;
        } else if (v >= lo_[var] - ftol && std::isfinite(lo_[var])) {
          t = (v - lo_[var]) / a;
        }
      } else {  // increasing
        if (v < lo_[var] - ftol) {
          t = (lo_[var] - v) / -a;
        } else if (v <= up_[var] + ftol && std::isfinite(up_[var])) {
          t = (up_[var] - v) / -a;
          to_upper = true;
        }
      }
      if (t == kInfinity) continue;
      t = std::max(t, 0.0);
      limit[p] = {to_upper ? 1 : 0, t};
      theta_min = std::min(theta_min, t);
    }
    (void)phase_one;

    Step step;
    double flip = up_[q] - lo_[q];
    if (std::isfinite(flip) && flip <= theta_min) {
      step.theta = flip;
      return step;
    }
    if (theta_min == kInfinity) return step;

    const double tie = 1e-12 * (1.0 + theta_min);
    double best_pivot = 0.0;
    for (std::size_t p = 0; p < m_; ++p) {
      if (limit[p].first == kNone || limit[p].second > theta_min + tie) continue;
      double mag = std::fabs(alpha[Eigen::Index(p)]);
      bool take;
      if (step.leave_pos == kNone) take = true;
      else if (bland) take = head_[p] < head_[step.leave_pos];
      else take = mag > best_pivot ||
                  (mag == best_pivot && head_[p] < head_[step.leave_pos]);
      if (take) {
        step.leave_pos = p;
        step.leave_at_upper = limit[p].first == 1;
        best_pivot = mag;
      }
    }
    step.theta = limit[step.leave_pos].second;
    return step;
  }

  void apply(std::size_t q, int dir, const Eigen::VectorXd& alpha,
             const Step& step) {
    const double move = dir * step.theta;
    if (move != 0.0) {
      x_[q] += move;
      for (std::size_t p = 0; p < m_; ++p) x_[head_[p]] -= move * alpha[Eigen::Index(p)];
    }
    if (step.leave_pos == kNone) {
      bool to_upper = dir > 0;
      state_[q] = to_upper ? VarState::AtUpper : VarState::AtLower;
      x_[q] = to_upper ? up_[q] : lo_[q];
      return;
    }
    const std::size_t r = step.leave_pos;
    const std::size_t out = head_[r];
    state_[out] = step.leave_at_upper ? VarState::AtUpper : VarState::AtLower;
    x_[out] = step.leave_at_upper ? up_[out] : lo_[out];
    where_[out] = kNone;
    head_[r] = q;
    where_[q] = r;
    state_[q] = VarState::Basic;

    Eta eta{r, alpha[Eigen::Index(r)], {}};
    for (std::size_t p = 0; p < m_; ++p) {
      double a = alpha[Eigen::Index(p)];
      if (p != r && std::fabs(a) > 1e-14) eta.entries.emplace_back(p, a);
    }
    etas_.push_back(std::move(eta));
  }

  const SimplexOptions& opt_;
  std::size_t n_, m_;
  std::vector<double> lo_, up_, cost_;
  std::vector<std::size_t> col_start_, row_index_;
  std::vector<double> value_;
  std::vector<double> x_;
  std::vector<VarState> state_;
  std::vector<std::size_t> where_, head_;
  mutable Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu_;
  std::vector<Eta> etas_;
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, const SimplexOptions& options) {
  lp.check();
  RangedRows rows = merge_rows(lp, options.feasibility_tol);
  for (std::size_t j = 0; j < lp.variable_count(); ++j) {
    if (lp.lower()[j] > lp.upper()[j]) rows.contradictory = true;
  }
  if (rows.contradictory) {
    LpSolution s;
    s.status = LpStatus::Infeasible;
    return s;
  }
  if (rows.terms.empty()) {
    // Bounds only: every variable sits at its cheaper finite bound.
    LpSolution s;
    s.status = LpStatus::Optimal;
    s.values.resize(lp.variable_count());
    for (std::size_t j = 0; j < lp.variable_count(); ++j) {
      double c = lp.cost()[j], lo = lp.lower()[j], up = lp.upper()[j];
      double v = c > 0 ? lo : c < 0 ? up : (std::isfinite(lo) ? lo : std::isfinite(up) ? up : 0.0);
      if (!std::isfinite(v)) s.status = LpStatus::Unbounded;
      s.values[j] = std::isfinite(v) ? v : 0.0;
    }
    s.objective = lp.objective_value(s.values);
    return s;
  }
  RevisedSimplex simplex(lp, rows, options);
  return simplex.run();
}

}  // namespace peakshave
