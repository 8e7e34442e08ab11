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

// Regression-adjustment estimates of conditional treatment effects.
//
// Each arm gets its own least-squares fit of the outcome on the model terms;
// tau(X_i) is the treated-arm prediction minus the control-arm prediction,
// evaluated for every unit. With fully interacted terms this is the same
// estimator as a single interacted regression.

#ifndef POLOPT_CATE_H_
#define POLOPT_CATE_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "polopt/dataset.h"

namespace polopt {

// A raw covariate (`age`) or its square (`age^2`).
struct ModelTerm {
  std::string covariate;
  int power = 1;

  // Throws kConfig on anything other than `name` or `name^2`.
  static ModelTerm Parse(std::string_view text);
  std::string Label() const;

  friend bool operator==(const ModelTerm&, const ModelTerm&) = default;
};

struct ModelSpec {
  std::vector<ModelTerm> terms;

  static ModelSpec Parse(const std::vector<std::string>& terms);
  // Throws kUnknownVariable for a missing covariate, kConfig for duplicates.
  void Validate(const PolicyDataset& ds) const;
  std::vector<std::string> Labels() const;
};

enum class Arm { kTreated, kControl };
std::string_view ArmName(Arm arm);

struct ArmModel {
  Arm arm = Arm::kTreated;
  double intercept = 0.0;
  std::vector<double> coefficients;  // aligned with ModelSpec::terms
  double residual_variance = 0.0;
  bool rank_ok = true;
  std::size_t num_units = 0;
  std::size_t rank = 0;

  // Prediction at one unit of `ds` (any arm).
  double Predict(const PolicyDataset& ds, const ModelSpec& spec,
                 std::size_t row) const;
};

// Row-major design matrix (intercept column first) for the rows of `ds`
// selected by `arm`. Exposed for tests and diagnostics.
struct DesignMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;  // row-major
  std::vector<double> response;
  std::vector<std::size_t> unit_index;

  double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
};
DesignMatrix BuildDesign(const PolicyDataset& ds, const ModelSpec& spec,
                         Arm arm);

// Least squares by complete orthogonal decomposition. A collinear design is
// not an error: the minimum-norm solution is returned with rank_ok = false.
// Throws kTooFewUnits when the arm has fewer than terms + 1 units.
ArmModel FitArm(const PolicyDataset& ds, Arm arm, const ModelSpec& spec);

struct DimEstimate {
  double estimate = 0.0;
  double se = 0.0;
};

// Difference in mean outcomes, treated minus control, with the unpooled
// standard error sqrt(s1^2/n1 + s0^2/n0). Throws kEmptyArm.
DimEstimate AteDim(const PolicyDataset& ds);

struct CateEstimates {
  std::vector<double> tau;          // every unit, row order
  std::vector<double> tau_treated;  // tau restricted to T = 1
  double ate_ra = 0.0;              // mean(tau)
  double att_ra = 0.0;              // mean(tau_treated)
  double ate_dim = 0.0;
  double dim_se = 0.0;
  ArmModel treated_model;
  ArmModel control_model;
  std::vector<std::string> terms;
};

CateEstimates EstimateCate(const PolicyDataset& ds, const ModelSpec& spec);

struct Histogram {
  std::vector<double> edges;  // bins + 1 values
  std::vector<std::size_t> counts;
};

struct CateHistogram {
  Histogram tau;
  Histogram tau_treated;  // same edges as `tau`
};

// Equal-width bins spanning [min tau, max tau]; the maximum lands in the last
// bin. Throws kInvalidArgument for bins < 1.
Histogram MakeHistogram(std::span<const double> values, double lo, double hi,
                        int bins);
CateHistogram MakeCateHistogram(const CateEstimates& est, int bins);

}  // namespace polopt

#endif  // POLOPT_CATE_H_
