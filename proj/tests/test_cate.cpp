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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "polopt/cate.h"
#include "polopt/error.h"
#include "polopt/numeric.h"
#include "test_util.h"

namespace polopt {
namespace {

PolicyDataset Toy(std::vector<double> y, AssignmentVector t,
                  std::vector<double> x) {
  return PolicyDataset(std::move(y), std::move(t), {"x"}, {std::move(x)}, {});
}

PolicyDataset WithOutcome(const PolicyDataset& ds, std::vector<double> y) {
  std::vector<std::vector<double>> cols;
  for (std::size_t j = 0; j < ds.num_covariates(); ++j) {
    cols.emplace_back(ds.covariate(j).begin(), ds.covariate(j).end());
  }
  return PolicyDataset(std::move(y), ds.treatment(), ds.covariate_names(),
                       std::move(cols), ds.ids());
}

TEST(ModelSpec, ParsesTerms) {
  const ModelSpec spec = ModelSpec::Parse({"age", "age^2", " re75 "});
  ASSERT_EQ(spec.terms.size(), 3u);
  EXPECT_EQ(spec.terms[1].covariate, "age");
  EXPECT_EQ(spec.terms[1].power, 2);
  EXPECT_EQ(spec.Labels(), (std::vector<std::string>{"age", "age^2", "re75"}));
  EXPECT_THROW(ModelTerm::Parse("age^3"), Error);
  EXPECT_THROW(ModelTerm::Parse(""), Error);
}

TEST(ModelSpec, ValidateRejectsUnknownAndDuplicate) {
  const PolicyDataset ds = Toy({1, 2}, {1, 0}, {0, 1});
  try {
    ModelSpec::Parse({"nope"}).Validate(ds);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownVariable);
  }
  try {
    ModelSpec::Parse({"x", "x"}).Validate(ds);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfig);
  }
}

TEST(FitArm, ConstantOutcome) {
  const PolicyDataset ds = Toy({7, 7, 7, 7, 1}, {1, 1, 1, 1, 0}, {1, 4, 2, 9, 0});
  const ArmModel m = FitArm(ds, Arm::kTreated, ModelSpec::Parse({"x"}));
  EXPECT_NEAR(m.intercept, 7.0, 1e-12);
  EXPECT_NEAR(m.coefficients[0], 0.0, 1e-12);
  EXPECT_NEAR(m.residual_variance, 0.0, 1e-20);
  EXPECT_TRUE(m.rank_ok);
  EXPECT_EQ(m.num_units, 4u);
}

TEST(FitArm, ExactLine) {
  const PolicyDataset ds = Toy({1, 3, 5, 9, 0}, {0, 0, 0, 0, 1}, {0, 1, 2, 4, 0});
  const ArmModel m = FitArm(ds, Arm::kControl, ModelSpec::Parse({"x"}));
  EXPECT_NEAR(m.intercept, 1.0, 1e-12);
  EXPECT_NEAR(m.coefficients[0], 2.0, 1e-12);
}

TEST(FitArm, TooFewUnits) {
  const PolicyDataset ds = Toy({1, 2, 3}, {1, 0, 0}, {0, 1, 2});
  try {
    FitArm(ds, Arm::kTreated, ModelSpec::Parse({"x"}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTooFewUnits);
    EXPECT_EQ(Classify(e.code()), ErrorClass::kEstimation);
  }
}

TEST(FitArm, CollinearDesignIsFlaggedNotFatal) {
  const std::vector<double> x = {0, 1, 2, 3, 4, 5};
  PolicyDataset ds({1, 2, 4, 3, 5, 6}, AssignmentVector(6, true), {"x", "x2"},
                   {x, x}, {});
  const ArmModel m = FitArm(ds, Arm::kTreated, ModelSpec::Parse({"x", "x2"}));
  EXPECT_FALSE(m.rank_ok);
  EXPECT_EQ(m.rank, 2u);
  // Minimum-norm solution splits the slope evenly between the copies.
  EXPECT_NEAR(m.coefficients[0], m.coefficients[1], 1e-10);
  const ArmModel single = FitArm(
      PolicyDataset({1, 2, 4, 3, 5, 6}, AssignmentVector(6, true), {"x"}, {x}, {}),
      Arm::kTreated, ModelSpec::Parse({"x"}));
  EXPECT_NEAR(m.coefficients[0] + m.coefficients[1], single.coefficients[0], 1e-10);
}

// Oracle: normal equations solved in long double on the same design.
TEST(FitArm, NswTreatedArmMatchesNormalEquations) {
  const PolicyDataset& ds = testing::Nsw();
  const ModelSpec spec = ModelSpec::Parse(testing::NswTerms());
  const ArmModel m = FitArm(ds, Arm::kTreated, spec);
  ASSERT_TRUE(m.rank_ok);

  std::vector<std::vector<double>> rows;
  std::vector<double> y;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (!ds.treatment()[i]) continue;
    std::vector<double> r = {1.0};
    for (const auto& t : spec.terms) {
      const double v = ds.Covariate(t.covariate)[i];
      r.push_back(t.power == 2 ? v * v : v);
    }
    rows.push_back(r);
    y.push_back(ds.outcome()[i]);
  }
  const auto beta = testing::NormalEquationsOls(rows, y);
  auto rel = [](double got, long double want) {
    return static_cast<double>(std::abs((got - want) / want));
  };
  EXPECT_LT(rel(m.intercept, beta[0]), 1e-8);
  for (std::size_t j = 0; j < m.coefficients.size(); ++j) {
    EXPECT_LT(rel(m.coefficients[j], beta[j + 1]), 1e-8) << spec.terms[j].Label();
  }
}

TEST(FitArm, ResidualsOrthogonalToDesign) {
  const PolicyDataset& ds = testing::Nsw();
  const ModelSpec spec = ModelSpec::Parse(testing::NswTerms());
  for (Arm arm : {Arm::kTreated, Arm::kControl}) {
    const ArmModel m = FitArm(ds, arm, spec);
    const DesignMatrix d = BuildDesign(ds, spec, arm);
    for (std::size_t c = 0; c < d.cols; ++c) {
      double dot = 0.0, scale = 0.0;
      for (std::size_t r = 0; r < d.rows; ++r) {
        const double resid = d.response[r] - m.Predict(ds, spec, d.unit_index[r]);
        dot += resid * d.at(r, c);
        scale += std::abs(d.response[r] * d.at(r, c));
      }
      EXPECT_LE(std::abs(dot), 1e-6 * scale) << ArmName(arm) << " column " << c;
    }
  }
}

TEST(EstimateCate, RecoversKnownLinearEffects) {
  // Y1 = 1 + 2x, Y0 = 0.5 - x, so tau = 0.5 + 3x for every unit.
  const std::vector<double> x = {0.0, 1.0, 2.0, 3.0};
  const AssignmentVector t = {1, 0, 1, 0};
  std::vector<double> y;
  for (std::size_t i = 0; i < 4; ++i) {
    y.push_back(t[i] ? 1.0 + 2.0 * x[i] : 0.5 - x[i]);
  }
  const CateEstimates est = EstimateCate(Toy(y, t, x), ModelSpec::Parse({"x"}));
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_NEAR(est.tau[i], 0.5 + 3.0 * x[i], 1e-8) << i;
  }
  EXPECT_EQ(est.tau_treated.size(), 2u);
  EXPECT_EQ(est.tau_treated[1], est.tau[2]);
}

TEST(EstimateCate, AteRaIsMeanOfTau) {
  const CateEstimates est =
      EstimateCate(testing::Nsw(), ModelSpec::Parse(testing::NswTerms()));
  EXPECT_EQ(est.ate_ra, Mean(est.tau));
  EXPECT_EQ(est.att_ra, Mean(est.tau_treated));
  EXPECT_EQ(est.tau_treated.size(), testing::Nsw().CountTreated());
}

TEST(EstimateCate, InterceptOnlyEqualsDim) {
  const CateEstimates est = EstimateCate(testing::Nsw(), ModelSpec{});
  EXPECT_NEAR(est.ate_ra, est.ate_dim, 1e-10);
}

TEST(EstimateCate, OutcomeScalingAndShift) {
  const PolicyDataset& ds = testing::Nsw();
  const ModelSpec spec = ModelSpec::Parse(testing::NswTerms());
  const CateEstimates base = EstimateCate(ds, spec);
  std::vector<double> scaled(ds.outcome().begin(), ds.outcome().end());
  std::vector<double> shifted = scaled;
  for (double& v : scaled) v *= 2.5;
  for (double& v : shifted) v += 40.0;
  const CateEstimates s = EstimateCate(WithOutcome(ds, scaled), spec);
  const CateEstimates h = EstimateCate(WithOutcome(ds, shifted), spec);
  EXPECT_NEAR(s.ate_ra, 2.5 * base.ate_ra, 1e-9);
  EXPECT_NEAR(s.ate_dim, 2.5 * base.ate_dim, 1e-12);
  for (std::size_t i = 0; i < ds.size(); ++i) {
    EXPECT_NEAR(s.tau[i], 2.5 * base.tau[i], 1e-8);
    EXPECT_NEAR(h.tau[i], base.tau[i], 1e-8);
  }
}

// Frozen from the first verified run; an independent numpy lstsq fit of the
// same two arm regressions agrees to 5e-10 on every tau.
TEST(EstimateCate, NswGoldenValues) {
  const CateEstimates est =
      EstimateCate(testing::Nsw(), ModelSpec::Parse(testing::NswTerms()));
  EXPECT_NEAR(est.ate_dim, 1.794342408, 1e-8);
  EXPECT_NEAR(est.dim_se, 0.6709965461, 1e-8);
  EXPECT_NEAR(est.ate_ra, 1.544720055, 1e-8);
  EXPECT_NEAR(est.att_ra, 1.764005893, 1e-8);
}

TEST(AteDim, HandComputable) {
  const DimEstimate d = AteDim(Toy({3, 1}, {1, 0}, {0, 0}));
  EXPECT_EQ(d.estimate, 2.0);
  EXPECT_EQ(d.se, 0.0);
  const DimEstimate z = AteDim(Toy({4, 4, 4, 4}, {1, 0, 1, 0}, {0, 0, 0, 0}));
  EXPECT_EQ(z.estimate, 0.0);
  EXPECT_EQ(z.se, 0.0);
}

TEST(AteDim, StandardErrorFormula) {
  // Treated {1, 3}: s1^2 = 2. Control {0, 0, 3}: s0^2 = 3.
  const DimEstimate d = AteDim(Toy({1, 3, 0, 0, 3}, {1, 1, 0, 0, 0}, {0, 0, 0, 0, 0}));
  EXPECT_DOUBLE_EQ(d.estimate, 1.0);
  EXPECT_DOUBLE_EQ(d.se, std::sqrt(2.0 / 2 + 3.0 / 3));
}

TEST(AteDim, EmptyArm) {
  try {
    AteDim(Toy({1, 2}, {1, 1}, {0, 0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyArm);
  }
}

TEST(Histogram, SpecExamples) {
  const Histogram one = MakeHistogram(std::vector<double>{1, 1, 1, 1}, 1, 1, 1);
  EXPECT_EQ(one.counts, (std::vector<std::size_t>{4}));
  const Histogram two = MakeHistogram(std::vector<double>{0, 1, 2, 3}, 0, 3, 2);
  EXPECT_EQ(two.counts, (std::vector<std::size_t>{2, 2}));
  EXPECT_EQ(two.edges, (std::vector<double>{0.0, 1.5, 3.0}));
}

TEST(Histogram, NswCountsSumToN) {
  const CateEstimates est =
      EstimateCate(testing::Nsw(), ModelSpec::Parse(testing::NswTerms()));
  const CateHistogram h = MakeCateHistogram(est, 20);
  auto sum = [](const std::vector<std::size_t>& c) {
    return std::accumulate(c.begin(), c.end(), std::size_t{0});
  };
  EXPECT_EQ(sum(h.tau.counts), 445u);
  EXPECT_EQ(sum(h.tau_treated.counts), 185u);
  EXPECT_EQ(h.tau.edges, h.tau_treated.edges);
  EXPECT_EQ(h.tau.edges.size(), 21u);
}

}  // namespace
}  // namespace polopt
