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

// Welfare of an assignment given per-unit effects tau.
//
//   W      = sum_i T_i * tau_i
//   T*_i   = 1[tau_i > 0]
//   W*     = sum_i T*_i * tau_i
//   regret = W* - W
//
// Sums are compensated and run in row order over the treated units only, so
// the same assignment always yields the same bits.

#ifndef POLOPT_WELFARE_H_
#define POLOPT_WELFARE_H_

#include <cstddef>
#include <optional>
#include <span>

#include "polopt/assignment.h"

namespace polopt {

struct WelfareReport {
  double total_welfare = 0.0;
  std::optional<double> avg_welfare;  // absent iff n_treated == 0
  std::size_t n_treated = 0;
  double share_treated = 0.0;
  double w_star = 0.0;
  double regret = 0.0;

  friend bool operator==(const WelfareReport&, const WelfareReport&) = default;
};

// Strict: units with tau == 0 are not treated.
AssignmentVector OptimalAssignment(std::span<const double> tau);

// W* without materializing T*.
double OptimalWelfare(std::span<const double> tau);

// Throws kLengthMismatch.
double TotalWelfare(std::span<const double> tau, const AssignmentVector& assign);

WelfareReport ActualWelfare(std::span<const double> tau,
                            const AssignmentVector& assign);

// Same as ActualWelfare with a precomputed W*; used inside searches.
WelfareReport ReportWithOptimum(std::span<const double> tau,
                                const AssignmentVector& assign, double w_star);

// Builds the report fields from an already accumulated total and count.
WelfareReport MakeReport(double total, std::size_t n_treated, std::size_t n,
                         double w_star);

double Regret(std::span<const double> tau, const AssignmentVector& assign);

// gamma(S) = alpha + beta(S): gamma is the average welfare per treated unit
// under the rule, alpha a design-free effect (e.g. the ATE) supplied by the
// caller, and beta what selection adds on top.
struct EffectDecomposition {
  double gamma = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
};

// Throws kNoTreatedUnits, kLengthMismatch.
EffectDecomposition DecomposeEffect(std::span<const double> tau,
                                    const AssignmentVector& assign,
                                    double alpha);

}  // namespace polopt

#endif  // POLOPT_WELFARE_H_
