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

// Threshold-based assignment rules and their exhaustive grid search.
//
// A rule treats unit i iff it passes the screen (by default T*_i, i.e.
// tau_i > 0) and x_d[i] >= c_d for every selection variable d. With one
// variable this is the univariate threshold rule, with two the quadrant rule
// (upper-right quadrant). The search evaluates every point of the Cartesian
// product of the per-variable grids; nothing is pruned, so the curve can be
// plotted as is.
//
// Under the T*-screened rule the total welfare can only fall as a threshold
// rises (every unit dropped has tau > 0), so maximizing the total always
// returns the smallest thresholds. Average welfare per treated unit is the
// useful objective there and is the CLI default.

#ifndef POLOPT_THRESHOLD_H_
#define POLOPT_THRESHOLD_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "polopt/assignment.h"
#include "polopt/dataset.h"
#include "polopt/welfare.h"

namespace polopt {

enum class GridSourceKind { kObservedUnique, kQuantile, kExplicit };

struct GridSource {
  GridSourceKind kind = GridSourceKind::kObservedUnique;
  int quantiles = 0;           // kQuantile
  std::vector<double> values;  // kExplicit

  // "observed" or "quantile:K".
  static GridSource Parse(std::string_view text);
  std::string ToString() const;
};

struct ThresholdGrid {
  std::vector<double> values;  // strictly increasing, non-empty
  GridSourceKind source = GridSourceKind::kObservedUnique;
  bool degenerate = false;     // the variable is constant
};

// observed: sorted distinct values. quantile:K: the K quantiles at
// probabilities k/(K-1) (linear interpolation), deduplicated. explicit:
// sorted, deduplicated. A constant column gives a single-value grid with
// `degenerate` set.
ThresholdGrid BuildGrid(std::span<const double> x, const GridSource& source);
// Throws kUnknownVariable.
ThresholdGrid BuildGrid(const PolicyDataset& ds, std::string_view var,
                        const GridSource& source);

enum class Objective { kTotalWelfare, kAverageWelfare };
Objective ParseObjective(std::string_view text);  // "total" | "avg"
std::string_view ObjectiveName(Objective objective);

// Objective value of a report; absent when the report cannot be ranked
// (average welfare of an empty selection).
std::optional<double> ObjectiveValue(const WelfareReport& report,
                                     Objective objective);

struct Constraints {
  std::optional<double> min_share;
  std::optional<double> max_share;
  std::optional<std::size_t> max_treated;

  // Throws kConfig on shares outside [0, 1] or min_share > max_share.
  void Validate() const;
  // Feasible points treat at least one unit and meet every bound.
  bool Admits(const WelfareReport& report) const;
  bool empty() const { return !min_share && !max_share && !max_treated; }
};

struct CurvePoint {
  std::vector<double> c;  // one threshold per selection variable
  WelfareReport report;
  bool feasible = false;
};

struct ThresholdSearchResult {
  std::vector<CurvePoint> curve;  // row-major over the grids, last fastest
  std::optional<std::size_t> best_index;
  bool angle_solution = false;
  std::vector<std::string> selection_vars;
  std::vector<std::size_t> grid_shape;
  Objective objective = Objective::kAverageWelfare;

  const CurvePoint* best() const {
    return best_index ? &curve[*best_index] : nullptr;
  }
};

struct Cut {
  std::span<const double> x;
  double c = 0.0;
};

// screen_i * prod_d 1[x_d[i] >= c_d]. Throws kLengthMismatch.
AssignmentVector AssignConjunction(const AssignmentVector& screen,
                                   std::span<const Cut> cuts);
AssignmentVector AssignUnivariate(const AssignmentVector& screen,
                                  std::span<const double> x, double c);
AssignmentVector AssignQuadrant(const AssignmentVector& screen,
                                std::span<const double> x,
                                std::span<const double> z, double c_x,
                                double c_z);

struct SelectionAxis {
  std::string name;
  std::span<const double> x;
  ThresholdGrid grid;
};

enum class Execution { kParallel, kSerialReference };

// Exhaustive search over the product of the axis grids. Cost is the product
// of the grid sizes times n, so more than two axes gets expensive quickly.
// Ties go to the lexicographically smallest thresholds. No feasible point
// leaves best_index empty; the curve is always complete.
ThresholdSearchResult SearchGrid(std::span<const double> tau,
                                 const AssignmentVector& screen,
                                 std::span<const SelectionAxis> axes,
                                 Objective objective,
                                 const Constraints& constraints,
                                 Execution execution = Execution::kParallel);

ThresholdSearchResult SearchUnivariate(std::span<const double> tau,
                                       const AssignmentVector& screen,
                                       std::span<const double> x,
                                       const ThresholdGrid& grid,
                                       Objective objective,
                                       const Constraints& constraints);

ThresholdSearchResult SearchBivariate(std::span<const double> tau,
                                      const AssignmentVector& screen,
                                      std::span<const double> x,
                                      std::span<const double> z,
                                      const ThresholdGrid& grid_x,
                                      const ThresholdGrid& grid_z,
                                      Objective objective,
                                      const Constraints& constraints);

// Scenario menu: the fixed variable's cut is held constant while the varying
// variable sweeps its grid. Points carry c = {fixed, varying}, in grid order.
// Empty selections are kept and carry no average welfare.
std::vector<CurvePoint> ScenarioMenu(std::span<const double> tau,
                                     const AssignmentVector& screen,
                                     const Cut& fixed,
                                     std::span<const double> varying,
                                     const ThresholdGrid& grid,
                                     Objective objective);

// Recomputes every feasibility flag under `constraints` and returns the index
// of the feasible argmax (ties to the earliest point). Throws
// kNoFeasiblePoint.
std::size_t ApplyConstraints(std::vector<CurvePoint>& curve,
                             const Constraints& constraints,
                             Objective objective);

// Argmax over feasible points without throwing.
std::optional<std::size_t> SelectBest(std::span<const CurvePoint> curve,
                                      Objective objective);

// True when `best` sits at the first or last value of any axis, counting
// only grid values that select at least one unit somewhere on the surface.
bool IsAngleSolution(std::span<const CurvePoint> curve,
                     std::span<const std::size_t> grid_shape,
                     std::size_t best);

}  // namespace polopt

#endif  // POLOPT_THRESHOLD_H_
