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

#include <omp.h>

#include <atomic>
#include <cstdint>
#include <string>

#include "polopt/error.h"
#include "polopt/kernels.h"
#include "polopt/numeric.h"

namespace polopt {
namespace {

std::atomic<int> g_kernel_threads{0};

}  // namespace

void SetKernelThreads(int threads) { g_kernel_threads = threads > 0 ? threads : 0; }

int KernelThreads() {
  const int cap = g_kernel_threads.load();
  return cap > 0 ? cap : omp_get_max_threads();
}

std::size_t GridSize(std::span<const GridAxisView> axes) {
  std::size_t size = 1;
  for (const auto& a : axes) size *= a.thresholds.size();
  return size;
}

void UnravelIndex(std::size_t flat, std::span<const GridAxisView> axes,
                  std::span<std::size_t> out) {
  for (std::size_t d = axes.size(); d-- > 0;) {
    const std::size_t len = axes[d].thresholds.size();
    out[d] = flat % len;
    flat /= len;
  }
}

std::vector<PointTotals> EvaluateGridOmp(std::span<const double> tau,
                                         const AssignmentVector& screen,
                                         std::span<const GridAxisView> axes) {
  const std::size_t n = tau.size();
  if (screen.size() != n) {
    throw Error(ErrorCode::kLengthMismatch, "screen and tau lengths differ");
  }
  for (const auto& a : axes) {
    if (a.x.size() != n) {
      throw Error(ErrorCode::kLengthMismatch,
                  "selection variable and tau lengths differ");
    }
  }

  // Only screened units can ever be treated; walking them in row order keeps
  // the summation order identical to the reference.
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < n; ++i) {
    if (screen[i]) candidates.push_back(i);
  }

  const std::size_t num_axes = axes.size();
  const std::size_t points = GridSize(axes);
  std::vector<PointTotals> out(points);
  const auto num_points = static_cast<std::int64_t>(points);

#pragma omp parallel num_threads(KernelThreads())
  {
    std::vector<double> cut(num_axes);
    std::vector<std::size_t> idx(num_axes);
#pragma omp for schedule(static)
    for (std::int64_t p = 0; p < num_points; ++p) {
      UnravelIndex(static_cast<std::size_t>(p), axes, idx);
      for (std::size_t d = 0; d < num_axes; ++d) {
        cut[d] = axes[d].thresholds[idx[d]];
      }
      CompensatedSum acc;
      std::size_t count = 0;
      for (const std::size_t i : candidates) {
        bool pass = true;
        for (std::size_t d = 0; d < num_axes && pass; ++d) {
          pass = axes[d].x[i] >= cut[d];
        }
        if (pass) {
          acc.Add(tau[i]);
          ++count;
        }
      }
      out[static_cast<std::size_t>(p)] = {acc.Value(), count};
    }
  }
  return out;
}

}  // namespace polopt
