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

#include "polopt/threshold.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "polopt/error.h"
#include "polopt/kernels.h"

namespace polopt {
namespace {

std::vector<double> SortedUnique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

void CheckLength(std::size_t expected, std::size_t got, const char* what) {
  if (expected != got) {
    throw Error(ErrorCode::kLengthMismatch,
                std::string(what) + " has " + std::to_string(got) +
                    " entries, expected " + std::to_string(expected));
  }
}

}  // namespace

GridSource GridSource::Parse(std::string_view text) {
  GridSource g;
  if (text == "observed") return g;
  constexpr std::string_view kQuantile = "quantile:";
  if (text.substr(0, kQuantile.size()) == kQuantile) {
    const auto digits = text.substr(kQuantile.size());
    int k = 0;
    const auto [ptr, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || k < 2) {
      throw Error(ErrorCode::kConfig,
                  "quantile grid needs an integer K >= 2, got '" +
                      std::string(text) + "'");
    }
    g.kind = GridSourceKind::kQuantile;
    g.quantiles = k;
    return g;
  }
  throw Error(ErrorCode::kConfig,
              "grid must be 'observed' or 'quantile:K', got '" +
                  std::string(text) + "'");
}

std::string GridSource::ToString() const {
  switch (kind) {
    case GridSourceKind::kObservedUnique: return "observed";
    case GridSourceKind::kQuantile: return "quantile:" + std::to_string(quantiles);
    case GridSourceKind::kExplicit: return "explicit";
  }
  return "observed";
}

ThresholdGrid BuildGrid(std::span<const double> x, const GridSource& source) {
  if (x.empty() && source.kind != GridSourceKind::kExplicit) {
    throw Error(ErrorCode::kEmptyDataset, "cannot build a grid from no values");
  }
  ThresholdGrid grid;
  grid.source = source.kind;
  const std::vector<double> observed =
      SortedUnique(std::vector<double>(x.begin(), x.end()));
  switch (source.kind) {
    case GridSourceKind::kObservedUnique:
      grid.values = observed;
      break;
    case GridSourceKind::kQuantile: {
      if (source.quantiles < 2) {
        throw Error(ErrorCode::kConfig, "quantile grid needs K >= 2");
      }
      std::vector<double> sorted(x.begin(), x.end());
      std::sort(sorted.begin(), sorted.end());
      const std::size_t n = sorted.size();
      std::vector<double> q;
      for (int k = 0; k < source.quantiles; ++k) {
        const double h = static_cast<double>(n - 1) * k / (source.quantiles - 1);
        const auto lo = static_cast<std::size_t>(std::floor(h));
        const std::size_t hi = std::min(lo + 1, n - 1);
        q.push_back(sorted[lo] + (h - static_cast<double>(lo)) *
                                     (sorted[hi] - sorted[lo]));
      }
      grid.values = SortedUnique(std::move(q));
      break;
    }
    case GridSourceKind::kExplicit:
      for (const double v : source.values) {
        if (!std::isfinite(v)) {
          throw Error(ErrorCode::kConfig, "explicit grid values must be finite");
        }
      }
      grid.values = SortedUnique(source.values);
      if (grid.values.empty()) {
        throw Error(ErrorCode::kConfig, "explicit grid is empty");
      }
      break;
  }
  grid.degenerate = observed.size() == 1;
  return grid;
}

ThresholdGrid BuildGrid(const PolicyDataset& ds, std::string_view var,
                        const GridSource& source) {
  return BuildGrid(ds.Covariate(var), source);
}

Objective ParseObjective(std::string_view text) {
  if (text == "avg" || text == "average") return Objective::kAverageWelfare;
  if (text == "total") return Objective::kTotalWelfare;
  throw Error(ErrorCode::kConfig,
              "objective must be 'avg' or 'total', got '" + std::string(text) +
                  "'");
}

std::string_view ObjectiveName(Objective objective) {
  return objective == Objective::kTotalWelfare ? "total" : "avg";
}

std::optional<double> ObjectiveValue(const WelfareReport& report,
                                     Objective objective) {
  if (objective == Objective::kTotalWelfare) return report.total_welfare;
  return report.avg_welfare;
}

void Constraints::Validate() const {
  auto in_unit = [](const std::optional<double>& s) {
    return !s || (*s >= 0.0 && *s <= 1.0);
  };
  if (!in_unit(min_share) || !in_unit(max_share)) {
    throw Error(ErrorCode::kConfig, "share constraints must lie in [0, 1]");
  }
  if (min_share && max_share && *min_share > *max_share) {
    throw Error(ErrorCode::kConfig, "min_share exceeds max_share");
  }
}

bool Constraints::Admits(const WelfareReport& report) const {
  if (report.n_treated == 0) return false;
  if (min_share && report.share_treated < *min_share) return false;
  if (max_share && report.share_treated > *max_share) return false;
  if (max_treated && report.n_treated > *max_treated) return false;
  return true;
}

AssignmentVector AssignConjunction(const AssignmentVector& screen,
                                   std::span<const Cut> cuts) {
  const std::size_t n = screen.size();
  for (const auto& cut : cuts) CheckLength(n, cut.x.size(), "selection variable");
  AssignmentVector out(n);
  for (std::size_t i = 0; i < n; ++i) {
    bool treat = screen[i];
    for (const auto& cut : cuts) treat = treat && cut.x[i] >= cut.c;
    out.Set(i, treat);
  }
  return out;
}

AssignmentVector AssignUnivariate(const AssignmentVector& screen,
                                  std::span<const double> x, double c) {
  const Cut cuts[] = {{x, c}};
  return AssignConjunction(screen, cuts);
}

AssignmentVector AssignQuadrant(const AssignmentVector& screen,
                                std::span<const double> x,
                                std::span<const double> z, double c_x,
                                double c_z) {
  const Cut cuts[] = {{x, c_x}, {z, c_z}};
  return AssignConjunction(screen, cuts);
}

std::optional<std::size_t> SelectBest(std::span<const CurvePoint> curve,
                                      Objective objective) {
  std::optional<std::size_t> best;
  double best_value = -std::numeric_limits<double>::infinity();
  for (std::size_t p = 0; p < curve.size(); ++p) {
    if (!curve[p].feasible) continue;
    const auto v = ObjectiveValue(curve[p].report, objective);
    if (!v) continue;
    // Strict comparison keeps the earliest (smallest-threshold) point on ties.
    if (!best || *v > best_value) {
      best = p;
      best_value = *v;
    }
  }
  return best;
}

std::size_t ApplyConstraints(std::vector<CurvePoint>& curve,
                             const Constraints& constraints,
                             Objective objective) {
  constraints.Validate();
  for (auto& point : curve) point.feasible = constraints.Admits(point.report);
  const auto best = SelectBest(curve, objective);
  if (!best) {
    throw Error(ErrorCode::kNoFeasiblePoint,
                "no grid point satisfies the constraints");
  }
  return *best;
}

bool IsAngleSolution(std::span<const CurvePoint> curve,
                     std::span<const std::size_t> grid_shape,
                     std::size_t best) {
  const std::size_t dims = grid_shape.size();
  std::vector<std::size_t> lo(dims, std::numeric_limits<std::size_t>::max());
  std::vector<std::size_t> hi(dims, 0);
  std::vector<std::size_t> idx(dims);
  auto unravel = [&](std::size_t flat) {
    for (std::size_t d = dims; d-- > 0;) {
      idx[d] = flat % grid_shape[d];
      flat /= grid_shape[d];
    }
  };
  for (std::size_t p = 0; p < curve.size(); ++p) {
    if (curve[p].report.n_treated == 0) continue;
    unravel(p);
    for (std::size_t d = 0; d < dims; ++d) {
      lo[d] = std::min(lo[d], idx[d]);
      hi[d] = std::max(hi[d], idx[d]);
    }
  }
  unravel(best);
  for (std::size_t d = 0; d < dims; ++d) {
    if (idx[d] == lo[d] || idx[d] == hi[d]) return true;
  }
  return false;
}

ThresholdSearchResult SearchGrid(std::span<const double> tau,
                                 const AssignmentVector& screen,
                                 std::span<const SelectionAxis> axes,
                                 Objective objective,
                                 const Constraints& constraints,
                                 Execution execution) {
  constraints.Validate();
  CheckLength(tau.size(), screen.size(), "screen");
  if (axes.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "search needs a selection variable");
  }
  std::vector<GridAxisView> views;
  ThresholdSearchResult result;
  result.objective = objective;
  for (const auto& axis : axes) {
    CheckLength(tau.size(), axis.x.size(), axis.name.c_str());
    if (axis.grid.values.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "empty threshold grid for '" + axis.name + "'");
    }
    views.push_back({axis.x, axis.grid.values});
    result.selection_vars.push_back(axis.name);
    result.grid_shape.push_back(axis.grid.values.size());
  }

  const std::vector<PointTotals> totals =
      execution == Execution::kParallel
          ? EvaluateGridOmp(tau, screen, views)
          : reference::EvaluateGridSerial(tau, screen, views);

  const double w_star = OptimalWelfare(tau);
  result.curve.resize(totals.size());
  std::vector<std::size_t> idx(views.size());
  for (std::size_t p = 0; p < totals.size(); ++p) {
    UnravelIndex(p, views, idx);
    CurvePoint& point = result.curve[p];
    point.c.resize(views.size());
    for (std::size_t d = 0; d < views.size(); ++d) {
      point.c[d] = views[d].thresholds[idx[d]];
    }
    point.report =
        MakeReport(totals[p].total, totals[p].n_treated, tau.size(), w_star);
    point.feasible = constraints.Admits(point.report);
  }

  result.best_index = SelectBest(result.curve, objective);
  if (result.best_index) {
    result.angle_solution =
        IsAngleSolution(result.curve, result.grid_shape, *result.best_index);
  }
  return result;
}

ThresholdSearchResult SearchUnivariate(std::span<const double> tau,
                                       const AssignmentVector& screen,
                                       std::span<const double> x,
                                       const ThresholdGrid& grid,
                                       Objective objective,
                                       const Constraints& constraints) {
  const SelectionAxis axes[] = {{"x", x, grid}};
  return SearchGrid(tau, screen, axes, objective, constraints);
}

ThresholdSearchResult SearchBivariate(std::span<const double> tau,
                                      const AssignmentVector& screen,
                                      std::span<const double> x,
                                      std::span<const double> z,
                                      const ThresholdGrid& grid_x,
                                      const ThresholdGrid& grid_z,
                                      Objective objective,
                                      const Constraints& constraints) {
  const SelectionAxis axes[] = {{"x", x, grid_x}, {"z", z, grid_z}};
  return SearchGrid(tau, screen, axes, objective, constraints);
}

std::vector<CurvePoint> ScenarioMenu(std::span<const double> tau,
                                     const AssignmentVector& screen,
                                     const Cut& fixed,
                                     std::span<const double> varying,
                                     const ThresholdGrid& grid,
                                     Objective objective) {
  if (!std::isfinite(fixed.c)) {
    throw Error(ErrorCode::kInvalidArgument, "fixed threshold must be finite");
  }
  ThresholdGrid fixed_grid;
  fixed_grid.values = {fixed.c};
  fixed_grid.source = GridSourceKind::kExplicit;
  const SelectionAxis axes[] = {{"fixed", fixed.x, fixed_grid},
                                {"varying", varying, grid}};
  return SearchGrid(tau, screen, axes, objective, Constraints{}).curve;
}

}  // namespace polopt
