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

// Decision boundary between T* = 1 and T* = 0 in the plane of two selection
// variables.
//
// P(T* = 1 | x, z) is estimated on a regular lattice by k-nearest neighbours
// in standardized coordinates (zero mean, unit sample variance per variable),
// and the 0.5 level set is traced with marching squares.

#ifndef POLOPT_BOUNDARY_H_
#define POLOPT_BOUNDARY_H_

#include <cstddef>
#include <span>
#include <vector>

#include "polopt/assignment.h"
#include "polopt/threshold.h"

namespace polopt {

struct Standardization {
  double mean_x = 0.0;
  double sd_x = 1.0;
  double mean_z = 0.0;
  double sd_z = 1.0;
};

struct ProbabilityGrid {
  std::vector<double> x_ticks;  // raw units, strictly increasing
  std::vector<double> z_ticks;
  std::vector<double> prob;     // prob[ix * z_ticks.size() + iz]
  std::size_t k = 0;
  Standardization scale;

  double at(std::size_t ix, std::size_t iz) const {
    return prob[ix * z_ticks.size() + iz];
  }
};

struct Point2 {
  double x = 0.0;
  double z = 0.0;
  friend bool operator==(const Point2&, const Point2&) = default;
};

struct Segment {
  Point2 a;
  Point2 b;
};

struct BoundaryPolyline {
  std::vector<Segment> segments;
};

// round(sqrt(n)), at least 1.
std::size_t DefaultNeighbors(std::size_t n);

struct GridOptions {
  std::size_t resolution = 100;  // ticks per axis
  std::size_t k = 0;             // 0 selects DefaultNeighbors(n)
  double padding = 0.05;         // fraction of the observed range per side
};

// Throws kDegenerateVariable (zero variance), kInvalidArgument (k outside
// [1, n], resolution < 2), kLengthMismatch.
ProbabilityGrid EstimateProbabilityGrid(std::span<const double> x,
                                        std::span<const double> z,
                                        const AssignmentVector& labels,
                                        const GridOptions& options,
                                        Execution execution = Execution::kParallel);

ProbabilityGrid EstimateProbabilityGrid(std::span<const double> x,
                                        std::span<const double> z,
                                        const AssignmentVector& labels,
                                        std::size_t resolution, std::size_t k);

// Marching squares at `level` (in (0, 1)). A node is inside when
// prob >= level; saddle cells are split by comparing the mean of the four
// corners with the level. Crossings on a shared cell edge are computed from
// the edge's endpoints in a fixed order, so neighbouring segments meet
// exactly.
BoundaryPolyline ExtractBoundary(const ProbabilityGrid& grid,
                                 double level = 0.5);

}  // namespace polopt

#endif  // POLOPT_BOUNDARY_H_
