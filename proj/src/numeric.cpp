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

#include "polopt/numeric.h"

#include <cstdio>
#include <cstdlib>
#include <limits>

namespace polopt {

double Sum(std::span<const double> values) {
  CompensatedSum acc;
  for (const double v : values) acc.Add(v);
  return acc.Value();
}

double Mean(std::span<const double> values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  return Sum(values) / static_cast<double>(values.size());
}

double SampleVariance(std::span<const double> values) {
  if (values.size() < 2) return 0.0;
  const double mean = Mean(values);
  CompensatedSum acc;
  for (const double v : values) {
    const double d = v - mean;
    acc.Add(d * d);
  }
  return acc.Value() / static_cast<double>(values.size() - 1);
}

double RoundSignificant(double value, int digits) {
  if (!std::isfinite(value) || value == 0.0) return value;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*e", digits - 1, value);
  return std::strtod(buf, nullptr);
}

}  // namespace polopt
