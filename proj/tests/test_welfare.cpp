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

#include <random>

#include "polopt/cate.h"
#include "polopt/error.h"
#include "polopt/threshold.h"
#include "polopt/welfare.h"
#include "test_util.h"

namespace polopt {
namespace {

const std::vector<double> kTableTau = {9, -4, 5, 6, -2, 6};
const AssignmentVector kTableActual = {1, 1, 1, 0, 0, 0};

TEST(Welfare, TableOne) {
  EXPECT_EQ(OptimalAssignment(kTableTau), (AssignmentVector{1, 0, 1, 1, 0, 1}));
  const WelfareReport r = ActualWelfare(kTableTau, kTableActual);
  EXPECT_EQ(r.total_welfare, 10.0);
  EXPECT_EQ(r.w_star, 26.0);
  EXPECT_EQ(r.regret, 16.0);
  EXPECT_EQ(r.n_treated, 3u);
  EXPECT_EQ(r.share_treated, 0.5);
  EXPECT_EQ(Regret(kTableTau, kTableActual), 16.0);
  EXPECT_EQ(TotalWelfare(kTableTau, AssignmentVector{1, 0, 1, 1, 0, 1}), 26.0);
}

TEST(Welfare, EmptyAssignmentHasNoAverage) {
  const WelfareReport r = ActualWelfare(kTableTau, AssignmentVector(6));
  EXPECT_EQ(r.total_welfare, 0.0);
  EXPECT_FALSE(r.avg_welfare.has_value());
  EXPECT_EQ(r.share_treated, 0.0);
}

TEST(Welfare, OptimalAssignmentEdgeCases) {
  EXPECT_EQ(OptimalAssignment(std::vector<double>{0.0}), (AssignmentVector{0}));
  EXPECT_EQ(OptimalAssignment(std::vector<double>{-1, -2}), (AssignmentVector{0, 0}));
  EXPECT_EQ(OptimalWelfare(std::vector<double>{-1, -2}), 0.0);
  EXPECT_EQ(Regret(std::vector<double>{1, 1}, AssignmentVector{0, 0}), 2.0);
  EXPECT_EQ(Regret(kTableTau, OptimalAssignment(kTableTau)), 0.0);
}

TEST(Welfare, LengthMismatch) {
  try {
    ActualWelfare(kTableTau, AssignmentVector{1, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kLengthMismatch);
  }
}

TEST(Welfare, ReportFieldsConsistent) {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 50; ++it) {
    const auto inst = testing::MakeInstance(rng, 30);
    const WelfareReport r = ActualWelfare(inst.tau, inst.actual);
    EXPECT_EQ(r.regret, r.w_star - r.total_welfare);
    EXPECT_EQ(r.n_treated, inst.actual.CountTreated());
    EXPECT_EQ(r.share_treated, r.n_treated / 30.0);
    EXPECT_EQ(r.avg_welfare.has_value(), r.n_treated > 0);
    EXPECT_EQ(r.total_welfare,
              static_cast<double>(testing::NaiveTotal(inst.tau, inst.actual)));
  }
}

TEST(Welfare, OptimalAssignmentScaleInvariant) {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 50; ++it) {
    auto inst = testing::MakeInstance(rng, 25);
    const AssignmentVector base = OptimalAssignment(inst.tau);
    for (double& v : inst.tau) v *= 0.37;
    EXPECT_EQ(OptimalAssignment(inst.tau), base);
  }
}

TEST(Welfare, LinearInTau) {
  std::mt19937_64 rng(13);
  for (int it = 0; it < 50; ++it) {
    const auto a = testing::MakeInstance(rng, 20);
    const auto b = testing::MakeInstance(rng, 20);
    std::vector<double> mix(20);
    for (std::size_t i = 0; i < 20; ++i) mix[i] = 2.0 * a.tau[i] - 3.0 * b.tau[i];
    EXPECT_EQ(TotalWelfare(mix, a.actual),
              2.0 * TotalWelfare(a.tau, a.actual) - 3.0 * TotalWelfare(b.tau, a.actual));
  }
}

TEST(Welfare, BruteForceNeverBeatsOptimum) {
  std::mt19937_64 rng(17);
  for (std::size_t n = 1; n <= 12; ++n) {
    const auto inst = testing::MakeInstance(rng, n);
    const double w_star = OptimalWelfare(inst.tau);
    double best = 0.0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      std::vector<std::uint8_t> a(n);
      for (std::size_t i = 0; i < n; ++i) a[i] = mask >> i & 1u;
      const double w = TotalWelfare(inst.tau, AssignmentVector(a));
      EXPECT_LE(w, w_star);
      best = std::max(best, w);
    }
    EXPECT_EQ(best, w_star);
  }
}

TEST(Decompose, HandComputable) {
  const EffectDecomposition d =
      DecomposeEffect(std::vector<double>{2, 4}, AssignmentVector{0, 1}, 3.0);
  EXPECT_EQ(d.gamma, 4.0);
  EXPECT_EQ(d.beta, 1.0);
  EXPECT_EQ(d.gamma, d.alpha + d.beta);
}

TEST(Decompose, EveryoneTreatedHasNoSelectionEffect) {
  const std::vector<double> tau = {1.5, -0.5, 2.0, 3.0};
  const EffectDecomposition d = DecomposeEffect(tau, AssignmentVector(4, true), 1.5);
  EXPECT_EQ(d.beta, 0.0);
}

TEST(Decompose, NoTreatedUnits) {
  try {
    DecomposeEffect(kTableTau, AssignmentVector(6), 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoTreatedUnits);
  }
}

// T*-screened age >= 42 rule on NSW with alpha = DIM. Frozen values come
// from an independent pandas recomputation over the same tau: 14 units,
// mean tau 1.277225429.
TEST(Decompose, NswAgeRule) {
  const PolicyDataset& ds = testing::Nsw();
  const CateEstimates est = EstimateCate(ds, ModelSpec::Parse(testing::NswTerms()));
  const AssignmentVector rule =
      AssignUnivariate(OptimalAssignment(est.tau), ds.Covariate("age"), 42.0);
  EXPECT_EQ(rule.CountTreated(), 14u);
  const EffectDecomposition d = DecomposeEffect(est.tau, rule, est.ate_dim);
  EXPECT_NEAR(d.gamma, 1.277225429, 1e-8);
  EXPECT_NEAR(d.beta, -0.5171169787, 1e-8);
  EXPECT_EQ(d.gamma, d.alpha + d.beta);
}

// Frozen after the first verified run; matches pandas sums over the same tau.
TEST(Welfare, NswActualAssignment) {
  const PolicyDataset& ds = testing::Nsw();
  const CateEstimates est = EstimateCate(ds, ModelSpec::Parse(testing::NswTerms()));
  const WelfareReport r = ActualWelfare(est.tau, ds.treatment());
  EXPECT_NEAR(r.total_welfare, 326.3410902, 1e-6);
  EXPECT_NEAR(r.w_star, 763.5580400, 1e-6);
  EXPECT_GE(r.regret, 0.0);
  EXPECT_EQ(OptimalAssignment(est.tau).CountTreated(), 343u);
}

}  // namespace
}  // namespace polopt
