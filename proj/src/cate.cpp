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

#include "polopt/cate.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <set>

#include "polopt/error.h"
#include "polopt/numeric.h"

namespace polopt {
namespace {

double TermValue(const ModelTerm& term, double x) {
  return term.power == 2 ? x * x : x;
}

std::vector<double> ArmOutcomes(const PolicyDataset& ds, bool treated) {
  std::vector<double> out;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (ds.treatment()[i] == treated) out.push_back(ds.outcome()[i]);
  }
  return out;
}

}  // namespace

ModelTerm ModelTerm::Parse(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  ModelTerm term;
  if (text.size() > 2 && text.substr(text.size() - 2) == "^2") {
    term.power = 2;
    text.remove_suffix(2);
  }
  if (text.empty() || text.find_first_of("^ \t,") != std::string_view::npos) {
    throw Error(ErrorCode::kConfig,
                "bad model term '" + std::string(text) + "'");
  }
  term.covariate = std::string(text);
  return term;
}

std::string ModelTerm::Label() const {
  return power == 2 ? covariate + "^2" : covariate;
}

ModelSpec ModelSpec::Parse(const std::vector<std::string>& terms) {
  ModelSpec spec;
  for (const auto& t : terms) spec.terms.push_back(ModelTerm::Parse(t));
  return spec;
}

void ModelSpec::Validate(const PolicyDataset& ds) const {
  std::set<std::string> seen;
  for (const auto& t : terms) {
    if (!ds.CovariateIndex(t.covariate)) {
      throw Error(ErrorCode::kUnknownVariable,
                  "model term refers to unknown covariate '" + t.covariate +
                      "'");
    }
    if (!seen.insert(t.Label()).second) {
      throw Error(ErrorCode::kConfig, "duplicate model term '" + t.Label() + "'");
    }
  }
}

std::vector<std::string> ModelSpec::Labels() const {
  std::vector<std::string> out;
  for (const auto& t : terms) out.push_back(t.Label());
  return out;
}

std::string_view ArmName(Arm arm) {
  return arm == Arm::kTreated ? "treated" : "control";
}

double ArmModel::Predict(const PolicyDataset& ds, const ModelSpec& spec,
                         std::size_t row) const {
  double y = intercept;
  for (std::size_t k = 0; k < spec.terms.size(); ++k) {
    const auto& term = spec.terms[k];
    y += coefficients[k] * TermValue(term, ds.Covariate(term.covariate)[row]);
  }
  return y;
}

DesignMatrix BuildDesign(const PolicyDataset& ds, const ModelSpec& spec,
                         Arm arm) {
  spec.Validate(ds);
  const bool treated = arm == Arm::kTreated;
  std::vector<std::span<const double>> columns;
  for (const auto& t : spec.terms) columns.push_back(ds.Covariate(t.covariate));

  DesignMatrix d;
  d.cols = spec.terms.size() + 1;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (ds.treatment()[i] != treated) continue;
    d.values.push_back(1.0);
    for (std::size_t k = 0; k < spec.terms.size(); ++k) {
      d.values.push_back(TermValue(spec.terms[k], columns[k][i]));
    }
    d.response.push_back(ds.outcome()[i]);
    d.unit_index.push_back(i);
    ++d.rows;
  }
  return d;
}

ArmModel FitArm(const PolicyDataset& ds, Arm arm, const ModelSpec& spec) {
  const DesignMatrix design = BuildDesign(ds, spec, arm);
  if (design.rows < design.cols) {
    throw Error(ErrorCode::kTooFewUnits,
                std::string(ArmName(arm)) + " arm has " +
                    std::to_string(design.rows) + " units for " +
                    std::to_string(design.cols) + " parameters");
  }

  using RowMajor =
      Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const Eigen::Map<const RowMajor> x(design.values.data(),
                                     static_cast<Eigen::Index>(design.rows),
                                     static_cast<Eigen::Index>(design.cols));
  const Eigen::Map<const Eigen::VectorXd> y(
      design.response.data(), static_cast<Eigen::Index>(design.rows));

  const Eigen::MatrixXd xm = x;
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(xm);
  const Eigen::VectorXd beta = cod.solve(y);

  ArmModel model;
  model.arm = arm;
  model.num_units = design.rows;
  model.rank = static_cast<std::size_t>(cod.rank());
  model.rank_ok = model.rank == design.cols;
  model.intercept = beta(0);
  model.coefficients.assign(beta.data() + 1, beta.data() + beta.size());

  CompensatedSum ssr;
  for (std::size_t r = 0; r < design.rows; ++r) {
    double fit = 0.0;
    for (std::size_t c = 0; c < design.cols; ++c) {
      fit += design.at(r, c) * beta(static_cast<Eigen::Index>(c));
    }
    const double e = design.response[r] - fit;
    ssr.Add(e * e);
  }
  const std::size_t dof = design.rows - model.rank;
  model.residual_variance = dof > 0 ? ssr.Value() / static_cast<double>(dof) : 0.0;
  return model;
}

DimEstimate AteDim(const PolicyDataset& ds) {
  const auto y1 = ArmOutcomes(ds, true);
  const auto y0 = ArmOutcomes(ds, false);
  if (y1.empty() || y0.empty()) {
    throw Error(ErrorCode::kEmptyArm,
                "difference in means needs both treated and control units");
  }
  DimEstimate out;
  out.estimate = Mean(y1) - Mean(y0);
  out.se = std::sqrt(SampleVariance(y1) / static_cast<double>(y1.size()) +
                     SampleVariance(y0) / static_cast<double>(y0.size()));
  return out;
}

CateEstimates EstimateCate(const PolicyDataset& ds, const ModelSpec& spec) {
  CateEstimates est;
  est.terms = spec.Labels();
  est.treated_model = FitArm(ds, Arm::kTreated, spec);
  est.control_model = FitArm(ds, Arm::kControl, spec);

  est.tau.resize(ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i) {
    est.tau[i] = est.treated_model.Predict(ds, spec, i) -
                 est.control_model.Predict(ds, spec, i);
    if (ds.treatment()[i]) est.tau_treated.push_back(est.tau[i]);
  }
  est.ate_ra = Mean(est.tau);
  est.att_ra = Mean(est.tau_treated);

  const DimEstimate dim = AteDim(ds);
  est.ate_dim = dim.estimate;
  est.dim_se = dim.se;
  return est;
}

Histogram MakeHistogram(std::span<const double> values, double lo, double hi,
                        int bins) {
  if (bins < 1) {
    throw Error(ErrorCode::kInvalidArgument, "histogram needs at least one bin");
  }
  Histogram h;
  h.edges.resize(static_cast<std::size_t>(bins) + 1);
  for (int k = 0; k <= bins; ++k) {
    h.edges[static_cast<std::size_t>(k)] =
        k == bins ? hi : lo + (hi - lo) * static_cast<double>(k) / bins;
  }
  h.counts.assign(static_cast<std::size_t>(bins), 0);
  const double width = hi - lo;
  for (const double v : values) {
    int b = 0;
    if (width > 0.0) {
      b = static_cast<int>(std::floor((v - lo) / width * bins));
      b = std::clamp(b, 0, bins - 1);
    }
    ++h.counts[static_cast<std::size_t>(b)];
  }
  return h;
}

CateHistogram MakeCateHistogram(const CateEstimates& est, int bins) {
  double lo = 0.0;
  double hi = 0.0;
  if (!est.tau.empty()) {
    const auto [mn, mx] = std::minmax_element(est.tau.begin(), est.tau.end());
    lo = *mn;
    hi = *mx;
  }
  return {MakeHistogram(est.tau, lo, hi, bins),
          MakeHistogram(est.tau_treated, lo, hi, bins)};
}

}  // namespace polopt
