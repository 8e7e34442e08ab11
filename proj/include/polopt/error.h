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

#ifndef POLOPT_ERROR_H_
#define POLOPT_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace polopt {

enum class ErrorCode {
  // Data errors.
  kIo,
  kInvalidSchema,
  kMissingColumn,
  kNonBinaryTreatment,
  kNonNumericCell,
  kEmptyDataset,
  kUnknownVariable,
  kLengthMismatch,
  kConfig,
  // Estimation / model errors.
  kTooFewUnits,
  kEmptyArm,
  kNoTreatedUnits,
  kDegenerateVariable,
  kInvalidArgument,
  // Search.
  kNoFeasiblePoint,
};

// Coarse grouping used for process exit codes.
enum class ErrorClass { kData, kEstimation, kInfeasible };

ErrorClass Classify(ErrorCode code);
std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace polopt

#endif  // POLOPT_ERROR_H_
