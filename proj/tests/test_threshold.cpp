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
#include "polopt/kernels.h"
#include "polopt/threshold.h"
#include "polopt/welfare.h"
#include "test_util.h"

namespace polopt {
namespace {

const std::vector<double> kTau = {9, -4, 5, 6, -2, 6};
const std::vector<double> kX = {10, 20, 30, 40, 50, 60};

ThresholdGrid Observed(std::span<const double> x) {
  return BuildGrid(x, GridSource{});
}

TEST(BuildGrid, ObservedUnique) {
  const ThresholdGrid g = Observed(std::vector<double>{3, 1, 3, 2});
  EXPECT_EQ(g.values, (std::vector<double>{1, 2, 3}));
  EXPECT_FALSE(g.degenerate);
}

TEST(BuildGrid, ConstantColumnIsDegenerate) {
  const ThresholdGrid g = Observed(std::vector<double>{4, 4, 4});
  EXPECT_EQ(g.values, (std::vector<double>{4}));
  EXPECT_TRUE(g.degenerate);
}

TEST(BuildGrid, Quantiles) {
  const std::vector<double> x = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  EXPECT_EQ(BuildGrid(x, GridSource::Parse("quantile:3")).values,
            (std::vector<double>{0, 5, 10}));
  EXPECT_EQ(BuildGrid(std::vector<double>{1, 1, 1, 2}, GridSource::Parse("quantile:4"))
                .values,
            (std::vector<double>{1, 2}));
  EXPECT_THROW(GridSource::Parse("quantile:1"), Error);
  EXPECT_THROW(GridSource::Parse("bogus"), Error);
}

TEST(BuildGrid, NswAgeStrictlyIncreasing) {
  const ThresholdGrid g = BuildGrid(testing::Nsw(), "age", GridSource{});
  for (std::size_t i = 1; i < g.values.size(); ++i) {
    EXPECT_LT(g.values[i - 1], g.values[i]);
  }
  EXPECT_THROW(BuildGrid(testing::Nsw(), "shoe_size", GridSource{}), Error);
}

TEST(Assign, Univariate) {
  const AssignmentVector t_star = OptimalAssignment(kTau);
  EXPECT_EQ(AssignUnivariate(t_star, kX, 35), (AssignmentVector{0, 0, 0, 1, 0, 1}));
  EXPECT_EQ(AssignUnivariate(t_star, kX, 10), t_star);
  EXPECT_EQ(AssignUnivariate(t_star, kX, 61), AssignmentVector(6));
  EXPECT_EQ(AssignUnivariate(t_star, kX, 40), (AssignmentVector{0, 0, 0, 1, 0, 1}));
}

TEST(Assign, Quadrant) {
  const AssignmentVector t_star = OptimalAssignment(kTau);
  const std::vector<double> z = {5, 4, 3, 2, 1, 0};
  EXPECT_EQ(AssignQuadrant(t_star, kX, z, 0, 0), t_star);
  EXPECT_EQ(AssignQuadrant(t_star, kX, z, 100, -5), AssignmentVector(6));
  EXPECT_EQ(AssignQuadrant(t_star, kX, z, 30, 2), (AssignmentVector{0, 0, 1, 1, 0, 0}));
  try {
    AssignQuadrant(t_star, kX, std::vector<double>{1, 2}, 0, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kLengthMismatch);
  }
}

TEST(Assign, NswQuadrantNearReportedCut) {
  const PolicyDataset& ds = testing::Nsw();
  const CateEstimates est = EstimateCate(ds, ModelSpec::Parse(testing::NswTerms()));
  const AssignmentVector a = AssignQuadrant(OptimalAssignment(est.tau),
                                            ds.Covariate("age"),
                                            ds.Covariate("re75"), 30.5, 10.9);
  EXPECT_GE(a.CountTreated(), 3u);
  EXPECT_LE(a.CountTreated(), 6u);
}

TEST(Search, TableOneTotalIsDegenerate) {
  const auto r = SearchUnivariate(kTau, OptimalAssignment(kTau), kX, Observed(kX),
                                  Objective::kTotalWelfare, {});
  ASSERT_TRUE(r.best());
  EXPECT_EQ(r.best()->c, (std::vector<double>{10}));
  EXPECT_EQ(r.best()->report.total_welfare, 26.0);
  EXPECT_TRUE(r.angle_solution);
  EXPECT_EQ(r.curve.size(), 6u);
}

TEST(Search, TableOneAverage) {
  // Per-threshold averages under T*: 26/4, 17/3, 17/3, 12/2, 6/1, 6/1.
  const auto r = SearchUnivariate(kTau, OptimalAssignment(kTau), kX, Observed(kX),
                                  Objective::kAverageWelfare, {});
  ASSERT_TRUE(r.best());
  EXPECT_EQ(r.best()->c, (std::vector<double>{10}));
  EXPECT_EQ(*r.best()->report.avg_welfare, 6.5);
}

TEST(Search, TiesGoToSmallestThreshold) {
  const std::vector<double> tau = {1, 1, 1};
  const std::vector<double> x = {1, 2, 3};
  const auto r = SearchUnivariate(tau, OptimalAssignment(tau), x, Observed(x),
                                  Objective::kAverageWelfare, {});
  EXPECT_EQ(r.best()->c, (std::vector<double>{1}));
}

TEST(Search, ReportsAreInternallyConsistent) {
  std::mt19937_64 rng(3);
  const auto inst = testing::MakeInstance(rng, 40);
  const auto r = SearchBivariate(inst.tau, OptimalAssignment(inst.tau), inst.x,
                                 inst.z, Observed(inst.x), Observed(inst.z),
                                 Objective::kAverageWelfare, {});
  const AssignmentVector screen = OptimalAssignment(inst.tau);
  for (const CurvePoint& p : r.curve) {
    const AssignmentVector a = AssignQuadrant(screen, inst.x, inst.z, p.c[0], p.c[1]);
    EXPECT_EQ(p.report.n_treated, a.CountTreated());
    EXPECT_EQ(p.report.total_welfare, TotalWelfare(inst.tau, a));
    if (p.report.n_treated > 0) {
      EXPECT_EQ(*p.report.avg_welfare,
                p.report.total_welfare / static_cast<double>(p.report.n_treated));
    }
  }
}

TEST(Search, ThreeByThreeHandEnumeration) {
  // Units on a 3x3 lattice, tau chosen so the (2, 1) quadrant wins on average.
  const std::vector<double> x = {1, 1, 1, 2, 2, 2, 3, 3, 3};
  const std::vector<double> z = {1, 2, 3, 1, 2, 3, 1, 2, 3};
  const std::vector<double> tau = {0.5, 1, 1, 4, 4, 1, 4, 4, 1};
  const auto r = SearchBivariate(tau, OptimalAssignment(tau), x, z, Observed(x),
                                 Observed(z), Objective::kAverageWelfare, {});
  ASSERT_EQ(r.curve.size(), 9u);
  EXPECT_EQ(r.grid_shape, (std::vector<std::size_t>{3, 3}));
  // Independent double loop.
  double best = -1.0;
  std::vector<double> arg;
  for (double cx : {1.0, 2.0, 3.0}) {
    for (double cz : {1.0, 2.0, 3.0}) {
      double s = 0.0;
      int n = 0;
      for (std::size_t i = 0; i < 9; ++i) {
        if (tau[i] > 0 && x[i] >= cx && z[i] >= cz) {
          s += tau[i];
          ++n;
        }
      }
      if (n > 0 && s / n > best) {
        best = s / n;
        arg = {cx, cz};
      }
    }
  }
  EXPECT_EQ(r.best()->c, arg);
  EXPECT_EQ(*r.best()->report.avg_welfare, best);
  EXPECT_EQ(arg, (std::vector<double>{2, 1}));
  // Curve order is row-major, z fastest.
  EXPECT_EQ(r.curve[1].c, (std::vector<double>{1, 2}));
  EXPECT_EQ(r.curve[3].c, (std::vector<double>{2, 1}));
}

TEST(Search, CollapsedAxisReproducesUnivariate) {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 20; ++it) {
    const auto inst = testing::MakeInstance(rng, 30);
    const AssignmentVector screen = OptimalAssignment(inst.tau);
    const auto uni = SearchUnivariate(inst.tau, screen, inst.x, Observed(inst.x),
                                      Objective::kAverageWelfare, {});
    ThresholdGrid low;
    low.values = {-1.0};
    const auto bi = SearchBivariate(inst.tau, screen, inst.z, inst.x, low,
                                    Observed(inst.x), Objective::kAverageWelfare, {});
    ASSERT_EQ(uni.curve.size(), bi.curve.size());
    for (std::size_t p = 0; p < uni.curve.size(); ++p) {
      EXPECT_EQ(uni.curve[p].report, bi.curve[p].report);
    }
    EXPECT_EQ(uni.best_index, bi.best_index);
  }
}

TEST(Search, SingleLowPointGivesTStarWelfare) {
  std::mt19937_64 rng(8);
  const auto inst = testing::MakeInstance(rng, 30);
  ThresholdGrid low;
  low.values = {-1.0};
  const auto r = SearchBivariate(inst.tau, OptimalAssignment(inst.tau), inst.x,
                                 inst.z, low, low, Objective::kTotalWelfare, {});
  ASSERT_TRUE(r.best());
  EXPECT_EQ(r.best()->report.total_welfare, OptimalWelfare(inst.tau));
}

TEST(Search, ParallelMatchesSerialReference) {
  std::mt19937_64 rng(21);
  for (int it = 0; it < 10; ++it) {
    const auto inst = testing::MakeInstance(rng, 50);
    const AssignmentVector screen = OptimalAssignment(inst.tau);
    const SelectionAxis axes[] = {{"x", inst.x, Observed(inst.x)},
                                  {"z", inst.z, Observed(inst.z)}};
    for (int threads : {1, 3}) {
      SetKernelThreads(threads);
      const auto par = SearchGrid(inst.tau, screen, axes, Objective::kAverageWelfare,
                                  {}, Execution::kParallel);
      const auto ser = SearchGrid(inst.tau, screen, axes, Objective::kAverageWelfare,
                                  {}, Execution::kSerialReference);
      ASSERT_EQ(par.curve.size(), ser.curve.size());
      for (std::size_t p = 0; p < par.curve.size(); ++p) {
        EXPECT_EQ(par.curve[p].report, ser.curve[p].report);
      }
      EXPECT_EQ(par.best_index, ser.best_index);
    }
  }
  SetKernelThreads(0);
}

TEST(Search, UnscreenedRule) {
  const AssignmentVector all(6, true);
  const auto r = SearchUnivariate(kTau, all, kX, Observed(kX),
                                  Objective::kTotalWelfare, {});
  // 1[x >= c] alone: totals 20, 11, 15, 10, 4, 6.
  EXPECT_EQ(r.best()->c, (std::vector<double>{10}));
  EXPECT_EQ(r.curve[2].report.total_welfare, 15.0);
  EXPECT_EQ(r.curve[4].report.total_welfare, 4.0);
}

TEST(Constraints, Validation) {
  Constraints c;
  c.min_share = 0.5;
  c.max_share = 0.4;
  EXPECT_THROW(c.Validate(), Error);
  c.max_share = 1.5;
  EXPECT_THROW(c.Validate(), Error);
}

TEST(Constraints, NoOpWithoutBounds) {
  const AssignmentVector screen = OptimalAssignment(kTau);
  auto r = SearchUnivariate(kTau, screen, kX, Observed(kX), Objective::kAverageWelfare, {});
  const auto before = r.best_index;
  EXPECT_EQ(ApplyConstraints(r.curve, {}, Objective::kAverageWelfare), *before);
}

TEST(Constraints, MaxTreatedZeroIsInfeasible) {
  const AssignmentVector screen = OptimalAssignment(kTau);
  auto r = SearchUnivariate(kTau, screen, kX, Observed(kX), Objective::kAverageWelfare, {});
  Constraints c;
  c.max_treated = 0;
  try {
    ApplyConstraints(r.curve, c, Objective::kAverageWelfare);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoFeasiblePoint);
    EXPECT_EQ(Classify(e.code()), ErrorClass::kInfeasible);
  }
  const auto s = SearchUnivariate(kTau, screen, kX, Observed(kX),
                                  Objective::kAverageWelfare, c);
  EXPECT_FALSE(s.best());
  EXPECT_EQ(s.curve.size(), 6u);
}

TEST(Constraints, ShareBandMovesOptimum) {
  const PolicyDataset& ds = testing::Nsw();
  const CateEstimates est = EstimateCate(ds, ModelSpec::Parse(testing::NswTerms()));
  const AssignmentVector screen = OptimalAssignment(est.tau);
  const auto edu = ds.Covariate("education");
  const auto free = SearchUnivariate(est.tau, screen, edu, Observed(edu),
                                     Objective::kAverageWelfare, {});
  // The education curve jumps from share 0.43 (c = 11) to 0.22 (c = 12), so
  // a 30-40% band admits no grid point on this sample.
  Constraints band;
  band.min_share = 0.3;
  band.max_share = 0.4;
  EXPECT_FALSE(SearchUnivariate(est.tau, screen, edu, Observed(edu),
                                Objective::kAverageWelfare, band)
                   .best());
  band.min_share = 0.2;
  band.max_share = 0.45;
  const auto held = SearchUnivariate(est.tau, screen, edu, Observed(edu),
                                     Objective::kAverageWelfare, band);
  ASSERT_TRUE(held.best());
  EXPECT_LT(held.best()->c[0], free.best()->c[0]);
  EXPECT_LT(*held.best()->report.avg_welfare, *free.best()->report.avg_welfare);
  EXPECT_GE(held.best()->report.share_treated, 0.2);
  EXPECT_LE(held.best()->report.share_treated, 0.45);
}

TEST(Angle, ActiveRangeOnly) {
  // The top grid value selects nobody, so c = 2 is the last active value.
  const std::vector<double> tau = {1, 2, -1};
  const std::vector<double> x = {1, 2, 3};
  const auto r = SearchUnivariate(tau, OptimalAssignment(tau), x, Observed(x),
                                  Objective::kAverageWelfare, {});
  EXPECT_EQ(r.best()->c, (std::vector<double>{2}));
  EXPECT_TRUE(r.angle_solution);
}

TEST(Angle, InteriorOptimum) {
  const std::vector<double> x = {1, 2, 3, 4};
  // Averages: 7/4, 2, 1/2, 1/2.
  const std::vector<double> t2 = {1, 5, 0.5, 0.5};
  const auto r = SearchUnivariate(t2, OptimalAssignment(t2), x, Observed(x),
                                  Objective::kAverageWelfare, {});
  EXPECT_EQ(r.best()->c, (std::vector<double>{2}));
  EXPECT_FALSE(r.angle_solution);
}

TEST(Menu, MatchesWelfareRecomputation) {
  std::mt19937_64 rng(31);
  const auto inst = testing::MakeInstance(rng, 40);
  const AssignmentVector screen = OptimalAssignment(inst.tau);
  ThresholdGrid g;
  g.values = {0, 2, 4, 6, 8};
  const auto rows = ScenarioMenu(inst.tau, screen, Cut{inst.x, 3.0}, inst.z, g,
                                 Objective::kAverageWelfare);
  ASSERT_EQ(rows.size(), 5u);
  for (const CurvePoint& p : rows) {
    EXPECT_EQ(p.c[0], 3.0);
    const AssignmentVector a = AssignQuadrant(screen, inst.x, inst.z, 3.0, p.c[1]);
    const WelfareReport w = ActualWelfare(inst.tau, a);
    EXPECT_EQ(p.report.total_welfare, w.total_welfare);
    EXPECT_EQ(p.report.avg_welfare, w.avg_welfare);
    EXPECT_EQ(p.report.n_treated, w.n_treated);
  }
}

TEST(Menu, SinglePointBelowMinimumEqualsUnivariate) {
  const AssignmentVector screen = OptimalAssignment(kTau);
  const std::vector<double> z = {1, 1, 1, 1, 1, 1};
  ThresholdGrid g;
  g.values = {0.0};
  const auto rows = ScenarioMenu(kTau, screen, Cut{kX, 35.0}, z, g,
                                 Objective::kAverageWelfare);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].report, ActualWelfare(kTau, AssignUnivariate(screen, kX, 35.0)));
}

}  // namespace
}  // namespace polopt
