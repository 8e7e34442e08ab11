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

// Literal serial evaluation: build the assignment for each grid point and
// score it with the welfare routines.

#include "polopt/kernels.h"
#include "polopt/threshold.h"
#include "polopt/welfare.h"

namespace polopt::reference {

std::vector<PointTotals> EvaluateGridSerial(
    std::span<const double> tau, const AssignmentVector& screen,
    std::span<const GridAxisView> axes) {
  const std::size_t points = GridSize(axes);
  std::vector<PointTotals> out;
  out.reserve(points);
  std::vector<std::size_t> idx(axes.size());
  std::vector<Cut> cuts(axes.size());
  for (std::size_t p = 0; p < points; ++p) {
    UnravelIndex(p, axes, idx);
    for (std::size_t d = 0; d < axes.size(); ++d) {
      cuts[d] = {axes[d].x, axes[d].thresholds[idx[d]]};
    }
    const AssignmentVector assign = AssignConjunction(screen, cuts);
    out.push_back({TotalWelfare(tau, assign), assign.CountTreated()});
  }
  return out;
}

}  // namespace polopt::reference
