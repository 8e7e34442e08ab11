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
#include <utility>

#include "polopt/error.h"
#include "polopt/kernels.h"

namespace polopt::reference {

// Full sort per node.
std::vector<double> KnnGridSerial(std::span<const double> xs,
                                  std::span<const double> zs,
                                  const AssignmentVector& labels,
                                  std::span<const double> node_x,
                                  std::span<const double> node_z,
                                  std::size_t k) {
  const std::size_t n = xs.size();
  if (zs.size() != n || labels.size() != n) {
    throw Error(ErrorCode::kLengthMismatch, "kNN inputs are misaligned");
  }
  if (k == 0 || k > n) {
    throw Error(ErrorCode::kInvalidArgument, "k must be in [1, n]");
  }
  std::vector<double> prob;
  prob.reserve(node_x.size() * node_z.size());
  std::vector<std::pair<double, std::size_t>> dist(n);
  for (const double gx : node_x) {
    for (const double gz : node_z) {
      for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - gx;
        const double dz = zs[i] - gz;
        dist[i] = {dx * dx + dz * dz, i};
      }
      std::sort(dist.begin(), dist.end());
      std::size_t positives = 0;
      for (std::size_t j = 0; j < k; ++j) {
        if (labels[dist[j].second]) ++positives;
      }
      prob.push_back(static_cast<double>(positives) / static_cast<double>(k));
    }
  }
  return prob;
}

}  // namespace polopt::reference
