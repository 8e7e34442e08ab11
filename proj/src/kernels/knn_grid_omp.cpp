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

#include <algorithm>
#include <cstdint>
#include <utility>

#include "polopt/error.h"
#include "polopt/kernels.h"

namespace polopt {

std::vector<double> KnnGridOmp(std::span<const double> xs,
                               std::span<const double> zs,
                               const AssignmentVector& labels,
                               std::span<const double> node_x,
                               std::span<const double> node_z, std::size_t k) {
  const std::size_t n = xs.size();
  if (zs.size() != n || labels.size() != n) {
    throw Error(ErrorCode::kLengthMismatch, "kNN inputs are misaligned");
  }
  if (k == 0 || k > n) {
    throw Error(ErrorCode::kInvalidArgument, "k must be in [1, n]");
  }
  const std::size_t nx = node_x.size();
  const std::size_t nz = node_z.size();
  std::vector<double> prob(nx * nz);
  const auto num_nodes = static_cast<std::int64_t>(nx * nz);

#pragma omp parallel num_threads(KernelThreads())
  {
    std::vector<std::pair<double, std::size_t>> dist(n);
#pragma omp for schedule(static)
    for (std::int64_t node = 0; node < num_nodes; ++node) {
      const double gx = node_x[static_cast<std::size_t>(node) / nz];
      const double gz = node_z[static_cast<std::size_t>(node) % nz];
      for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - gx;
        const double dz = zs[i] - gz;
        dist[i] = {dx * dx + dz * dz, i};
      }
      // Pairs compare by distance then index, so the k-set is unique.
      std::nth_element(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k - 1),
                       dist.end());
      std::size_t positives = 0;
      for (std::size_t j = 0; j < k; ++j) {
        if (labels[dist[j].second]) ++positives;
      }
      prob[static_cast<std::size_t>(node)] =
          static_cast<double>(positives) / static_cast<double>(k);
    }
  }
  return prob;
}

}  // namespace polopt
