// Copyright 2026 The peakshave Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "instance.hpp"
#include "relaxation.hpp"

#include <cstddef>
#include <vector>

namespace peakshave {

// What a rounded schedule promises relative to the relaxed optimum y.
struct CertificateCheck {
  std::vector<FeasibilityViolation> violations;  // empty iff feasible and binary
  std::size_t sandwich_violations = 0;  // cells outside [floor(y^), ceil(y^)]
  double max_deviation = 0.0;           // max_t |load(x) - load(y)|
  double deviation_bound = 0.0;         // E
  double objective = 0.0;               // m^A
  double lp_bound = 0.0;                // m^LP
  double gap = 0.0;                     // m^A - m^LP
  double gap_bound = 0.0;               // E, or 2E for fluctuation

  bool feasible() const { return violations.empty(); }
  bool deviation_ok(double tol) const { return max_deviation <= deviation_bound + tol; }
  bool gap_ok(double tol) const { return gap <= gap_bound + tol; }
  bool passed(double tol) const {
    return feasible() && sandwich_violations == 0 && deviation_ok(tol) && gap_ok(tol);
  }
};

inline constexpr double kCertificateTolerance = 1e-6;

CertificateCheck check_certificates(const Instance& inst, ObjectiveKind kind,
                                    const Grid<int>& x, const RelaxedSolution& y,
                                    double tol = kCertificateTolerance);

}  // namespace peakshave
