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

#include "polopt/assignment.h"

#include <algorithm>
#include <string>

#include "polopt/error.h"

namespace polopt {

AssignmentVector::AssignmentVector(std::size_t n, bool value)
    : values_(n, value ? 1 : 0) {}

AssignmentVector::AssignmentVector(std::vector<std::uint8_t> values)
    : values_(std::move(values)) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] > 1) {
      throw Error(ErrorCode::kInvalidArgument,
                  "assignment value at position " + std::to_string(i) +
                      " is not 0 or 1");
    }
  }
}

AssignmentVector::AssignmentVector(std::initializer_list<int> values) {
  values_.reserve(values.size());
  for (const int v : values) {
    if (v != 0 && v != 1) {
      throw Error(ErrorCode::kInvalidArgument, "assignment value is not 0 or 1");
    }
    values_.push_back(static_cast<std::uint8_t>(v));
  }
}

std::size_t AssignmentVector::CountTreated() const {
  return static_cast<std::size_t>(
      std::count(values_.begin(), values_.end(), std::uint8_t{1}));
}

}  // namespace polopt
