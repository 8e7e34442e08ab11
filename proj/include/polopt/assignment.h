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

#ifndef POLOPT_ASSIGNMENT_H_
#define POLOPT_ASSIGNMENT_H_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace polopt {

// A realized 0/1 treatment decision per unit.
class AssignmentVector {
 public:
  AssignmentVector() = default;
  // All-zero (or all-one) assignment of length n.
  explicit AssignmentVector(std::size_t n, bool value = false);
  // Throws kInvalidArgument if any value is outside {0, 1}.
  explicit AssignmentVector(std::vector<std::uint8_t> values);
  AssignmentVector(std::initializer_list<int> values);

  std::size_t size() const { return values_.size(); }
  bool operator[](std::size_t i) const { return values_[i] != 0; }
  void Set(std::size_t i, bool value) { values_[i] = value ? 1 : 0; }

  std::size_t CountTreated() const;
  std::span<const std::uint8_t> values() const { return values_; }

  friend bool operator==(const AssignmentVector&,
                         const AssignmentVector&) = default;

 private:
  std::vector<std::uint8_t> values_;
};

}  // namespace polopt

#endif  // POLOPT_ASSIGNMENT_H_
