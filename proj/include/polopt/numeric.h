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

#ifndef POLOPT_NUMERIC_H_
#define POLOPT_NUMERIC_H_

#include <cmath>
#include <span>

namespace polopt {

// Kahan-Babuska (Neumaier) accumulator. All sums reported by the library go
// through this class in row order, which makes every total reproducible bit
// for bit regardless of how the surrounding work is scheduled.
class CompensatedSum {
 public:
  void Add(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      compensation_ += (sum_ - t) + x;
    } else {
      compensation_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double Value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

double Sum(std::span<const double> values);

// Arithmetic mean; NaN for an empty span.
double Mean(std::span<const double> values);

// Sample variance with the n - 1 denominator; 0 when fewer than two values.
double SampleVariance(std::span<const double> values);

// Rounds to `digits` significant decimal digits by a printf/strtod round
// trip. Used to pin the textual form of every serialized float.
double RoundSignificant(double value, int digits);

}  // namespace polopt

#endif  // POLOPT_NUMERIC_H_
