// Copyright 2026 The peakshave Authors
// SPDX-License-Identifier: Apache-2.0

#include "certificate.hpp"

#include <algorithm>
#include <cmath>

namespace peakshave {

CertificateCheck check_certificates(const Instance& inst, ObjectiveKind kind,
                                    const Grid<int>& x, const RelaxedSolution& y,
                                    double tol) {
  const std::size_t C = inst.converter_count(), T = inst.horizon;
  require_shape(x, C, T, "check_certificates");
  require_shape(y.values(), C, T, "check_certificates");
  CertificateCheck out;
  out.violations = feasibility_violations(inst, x);
  out.deviation_bound = inst.max_abs_electricity();
  out.gap_bound = error_bound(inst, kind);

  for (std::size_t c = 0; c < C; ++c) {
    long running = 0;
    for (std::size_t t = 0; t < T; ++t) {
      running += x(c, t);
      const double p = y.prefix(c, t);
      if (running < std::floor(p) - tol || running > std::ceil(p) + tol)
        ++out.sandwich_violations;
    }
  }
  const std::vector<double> electricity = inst.electricity();
  for (std::size_t t = 0; t < T; ++t) {
    double d = 0.0;
    for (std::size_t c = 0; c < C; ++c) d += electricity[c] * (x(c, t) - y.value(c, t));
    out.max_deviation = std::max(out.max_deviation, std::fabs(d));
  }
  out.objective = evaluate_objective(inst, x, kind);
  out.lp_bound = y.objective();
  out.gap = out.objective - out.lp_bound;
  return out;
}

}  // namespace peakshave
