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

#include "polopt/boundary.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "polopt/error.h"
#include "polopt/kernels.h"
#include "polopt/numeric.h"

namespace polopt {
namespace {

std::vector<double> Ticks(std::span<const double> v, std::size_t resolution,
                          double padding) {
  const auto [lo_it, hi_it] = std::minmax_element(v.begin(), v.end());
  const double span = *hi_it - *lo_it;
  const double lo = *lo_it - padding * span;
  const double hi = *hi_it + padding * span;
  std::vector<double> ticks(resolution);
  for (std::size_t i = 0; i < resolution; ++i) {
    ticks[i] = i + 1 == resolution
                   ? hi
                   : lo + (hi - lo) * static_cast<double>(i) /
                              static_cast<double>(resolution - 1);
  }
  return ticks;
}

// Corner order: 0 = (ix, iz), 1 = (ix+1, iz), 2 = (ix+1, iz+1), 3 = (ix, iz+1).
// Edge e joins kEdgeEnds[e][0] -> kEdgeEnds[e][1], always from the
// lexicographically smaller node, so a shared edge is interpolated the same
// way from both sides.
constexpr int kEdgeEnds[4][2] = {{0, 1}, {1, 2}, {3, 2}, {0, 3}};

// Edge pairs per case; saddles (5, 10) are handled separately.
constexpr int kCaseEdges[16][2] = {
    {-1, -1}, {3, 0}, {0, 1}, {3, 1}, {1, 2}, {-1, -1}, {0, 2}, {3, 2},
    {2, 3},   {0, 2}, {-1, -1}, {1, 2}, {3, 1}, {0, 1}, {3, 0}, {-1, -1}};

}  // namespace

std::size_t DefaultNeighbors(std::size_t n) {
  const auto k = static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(n))));
  return std::max<std::size_t>(1, k);
}

ProbabilityGrid EstimateProbabilityGrid(std::span<const double> x,
                                        std::span<const double> z,
                                        const AssignmentVector& labels,
                                        const GridOptions& options,
                                        Execution execution) {
  const std::size_t n = x.size();
  if (z.size() != n || labels.size() != n) {
    throw Error(ErrorCode::kLengthMismatch, "boundary inputs are misaligned");
  }
  if (n == 0) throw Error(ErrorCode::kEmptyDataset, "boundary needs data");
  if (options.resolution < 2) {
    throw Error(ErrorCode::kInvalidArgument, "grid resolution must be >= 2");
  }
  const std::size_t k = options.k == 0 ? DefaultNeighbors(n) : options.k;
  if (k > n) {
    throw Error(ErrorCode::kInvalidArgument,
                "k = " + std::to_string(k) + " exceeds n = " + std::to_string(n));
  }

  ProbabilityGrid grid;
  grid.k = k;
  grid.scale.mean_x = Mean(x);
  grid.scale.sd_x = std::sqrt(SampleVariance(x));
  grid.scale.mean_z = Mean(z);
  grid.scale.sd_z = std::sqrt(SampleVariance(z));
  if (!(grid.scale.sd_x > 0.0) || !(grid.scale.sd_z > 0.0)) {
    throw Error(ErrorCode::kDegenerateVariable,
                "a selection variable has zero variance");
  }

  grid.x_ticks = Ticks(x, options.resolution, options.padding);
  grid.z_ticks = Ticks(z, options.resolution, options.padding);

  auto standardize = [](std::span<const double> v, double mean, double sd) {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = (v[i] - mean) / sd;
    return out;
  };
  const auto xs = standardize(x, grid.scale.mean_x, grid.scale.sd_x);
  const auto zs = standardize(z, grid.scale.mean_z, grid.scale.sd_z);
  const auto gx = standardize(grid.x_ticks, grid.scale.mean_x, grid.scale.sd_x);
  const auto gz = standardize(grid.z_ticks, grid.scale.mean_z, grid.scale.sd_z);

  grid.prob = execution == Execution::kParallel
                  ? KnnGridOmp(xs, zs, labels, gx, gz, k)
                  : reference::KnnGridSerial(xs, zs, labels, gx, gz, k);
  return grid;
}

ProbabilityGrid EstimateProbabilityGrid(std::span<const double> x,
                                        std::span<const double> z,
                                        const AssignmentVector& labels,
                                        std::size_t resolution, std::size_t k) {
  GridOptions options;
  options.resolution = resolution;
  options.k = k;
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "k must be >= 1");
  return EstimateProbabilityGrid(x, z, labels, options);
}

BoundaryPolyline ExtractBoundary(const ProbabilityGrid& grid, double level) {
  if (!(level > 0.0 && level < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "level must lie in (0, 1)");
  }
  BoundaryPolyline out;
  const std::size_t nx = grid.x_ticks.size();
  const std::size_t nz = grid.z_ticks.size();
  if (nx < 2 || nz < 2) return out;

  for (std::size_t ix = 0; ix + 1 < nx; ++ix) {
    for (std::size_t iz = 0; iz + 1 < nz; ++iz) {
      const std::size_t cx[4] = {ix, ix + 1, ix + 1, ix};
      const std::size_t cz[4] = {iz, iz, iz + 1, iz + 1};
      double v[4];
      int index = 0;
      for (int c = 0; c < 4; ++c) {
        v[c] = grid.at(cx[c], cz[c]);
        if (v[c] >= level) index |= 1 << c;
      }
      if (index == 0 || index == 15) continue;

      auto crossing = [&](int edge) {
        const int a = kEdgeEnds[edge][0];
        const int b = kEdgeEnds[edge][1];
        const double t = (level - v[a]) / (v[b] - v[a]);
        const double xa = grid.x_ticks[cx[a]];
        const double za = grid.z_ticks[cz[a]];
        const double xb = grid.x_ticks[cx[b]];
        const double zb = grid.z_ticks[cz[b]];
        // Only one coordinate varies along an edge; keep the other exact.
        return Point2{xa == xb ? xa : xa + t * (xb - xa),
                      za == zb ? za : za + t * (zb - za)};
      };
      auto emit = [&](int e0, int e1) {
        out.segments.push_back({crossing(e0), crossing(e1)});
      };

      if (index == 5 || index == 10) {
        const bool center_in = (v[0] + v[1] + v[2] + v[3]) / 4.0 >= level;
        // Inside corners joined through the centre: cut off the outside
        // corners; otherwise cut off the inside ones.
        const bool cut_odd = (index == 5) == center_in;
        if (cut_odd) {
          emit(0, 1);  // around corner 1
          emit(2, 3);  // around corner 3
        } else {
          emit(3, 0);  // around corner 0
          emit(1, 2);  // around corner 2
        }
        continue;
      }
      emit(kCaseEdges[index][0], kCaseEdges[index][1]);
    }
  }
  return out;
}

}  // namespace polopt
