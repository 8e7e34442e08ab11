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

// Data-parallel kernels and their serial references.
//
// The OpenMP kernels in src/kernels and the plain loops in src/reference must
// agree bit for bit: each grid point is computed by one thread with the same
// per-point summation order, and no cross-point reduction happens inside a
// parallel region.

#ifndef POLOPT_KERNELS_H_
#define POLOPT_KERNELS_H_

#include <cstddef>
#include <span>
#include <vector>

#include "polopt/assignment.h"

namespace polopt {

struct GridAxisView {
  std::span<const double> x;
  std::span<const double> thresholds;
};

struct PointTotals {
  double total = 0.0;
  std::size_t n_treated = 0;

  friend bool operator==(const PointTotals&, const PointTotals&) = default;
};

// Number of points in the product grid (row-major, last axis fastest).
std::size_t GridSize(std::span<const GridAxisView> axes);
// Per-axis threshold indices of a flat point index.
void UnravelIndex(std::size_t flat, std::span<const GridAxisView> axes,
                  std::span<std::size_t> out);

// Sum of tau over screened units passing every cut, for every grid point.
std::vector<PointTotals> EvaluateGridOmp(std::span<const double> tau,
                                         const AssignmentVector& screen,
                                         std::span<const GridAxisView> axes);

// kNN share of label 1 at every node of a standardized 2-D lattice.
// Node (ix, iz) is stored at ix * nz + iz. `xs`, `zs` and the node
// coordinates are already standardized. Distance ties go to the lower index.
std::vector<double> KnnGridOmp(std::span<const double> xs,
                               std::span<const double> zs,
                               const AssignmentVector& labels,
                               std::span<const double> node_x,
                               std::span<const double> node_z, std::size_t k);

namespace reference {

std::vector<PointTotals> EvaluateGridSerial(std::span<const double> tau,
                                            const AssignmentVector& screen,
                                            std::span<const GridAxisView> axes);

std::vector<double> KnnGridSerial(std::span<const double> xs,
                                  std::span<const double> zs,
                                  const AssignmentVector& labels,
                                  std::span<const double> node_x,
                                  std::span<const double> node_z,
                                  std::size_t k);

}  // namespace reference

// Caps the OpenMP team size for the kernels; 0 restores the runtime default.
void SetKernelThreads(int threads);
int KernelThreads();

}  // namespace polopt

#endif  // POLOPT_KERNELS_H_
