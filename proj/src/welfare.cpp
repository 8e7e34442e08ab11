/*
 * Copyright 2026 The polopt Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "polopt/welfare.h"

#include <string>

#include "polopt/error.h"
#include "polopt/numeric.h"

namespace polopt {
namespace {

void CheckLengths(std::span<const double> tau, const AssignmentVector& assign) {
  if (tau.size() != assign.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "tau has " + std::to_string(tau.size()) +
                    " entries but the assignment has " +
                    std::to_string(assign.size()));
  }
}

}  // namespace

AssignmentVector OptimalAssignment(std::span<const double> tau) {
  AssignmentVector out(tau.size());
  for (std::size_t i = 0; i < tau.size(); ++i) out.Set(i, tau[i] > 0.0);
  return out;
}

double OptimalWelfare(std::span<const double> tau) {
  CompensatedSum acc;
  for (const double t : tau) {
    if (t > 0.0) acc.Add(t);
  }
  return acc.Value();
}

double TotalWelfare(std::span<const double> tau,
                    const AssignmentVector& assign) {
  CheckLengths(tau, assign);
  CompensatedSum acc;
  for (std::size_t i = 0; i < tau.size(); ++i) {
    if (assign[i]) acc.Add(tau[i]);
  }
  return acc.Value();
}

WelfareReport MakeReport(double total, std::size_t n_treated, std::size_t n,
                         double w_star) {
  WelfareReport r;
  r.total_welfare = total;
  r.n_treated = n_treated;
  r.share_treated =
      n == 0 ? 0.0 : static_cast<double>(n_treated) / static_cast<double>(n);
  if (n_treated > 0) r.avg_welfare = total / static_cast<double>(n_treated);
  r.w_star = w_star;
  r.regret = w_star - total;
  return r;
}

WelfareReport ReportWithOptimum(std::span<const double> tau,
                                const AssignmentVector& assign, double w_star) {
  const double total = TotalWelfare(tau, assign);
  return MakeReport(total, assign.CountTreated(), tau.size(), w_star);
}

WelfareReport ActualWelfare(std::span<const double> tau,
                            const AssignmentVector& assign) {
  return ReportWithOptimum(tau, assign, OptimalWelfare(tau));
}

double Regret(std::span<const double> tau, const AssignmentVector& assign) {
  return ActualWelfare(tau, assign).regret;
}

EffectDecomposition DecomposeEffect(std::span<const double> tau,
                                    const AssignmentVector& assign,
                                    double alpha) {
  const WelfareReport r = ActualWelfare(tau, assign);
  if (!r.avg_welfare) {
    throw Error(ErrorCode::kNoTreatedUnits,
                "effect decomposition needs at least one treated unit");
  }
  EffectDecomposition d;
  d.alpha = alpha;
  d.beta = *r.avg_welfare - alpha;
  // Stored so that gamma == alpha + beta holds exactly; differs from the
  // average welfare by at most one rounding.
  d.gamma = d.alpha + d.beta;
  return d;
}

}  // namespace polopt
