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

#include "polopt/error.h"

namespace polopt {

ErrorClass Classify(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIo:
    case ErrorCode::kInvalidSchema:
    case ErrorCode::kMissingColumn:
    case ErrorCode::kNonBinaryTreatment:
    case ErrorCode::kNonNumericCell:
    case ErrorCode::kEmptyDataset:
    case ErrorCode::kUnknownVariable:
    case ErrorCode::kLengthMismatch:
    case ErrorCode::kConfig:
      return ErrorClass::kData;
    case ErrorCode::kTooFewUnits:
    case ErrorCode::kEmptyArm:
    case ErrorCode::kNoTreatedUnits:
    case ErrorCode::kDegenerateVariable:
    case ErrorCode::kInvalidArgument:
      return ErrorClass::kEstimation;
    case ErrorCode::kNoFeasiblePoint:
      return ErrorClass::kInfeasible;
  }
  return ErrorClass::kData;
}

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIo: return "Io";
    case ErrorCode::kInvalidSchema: return "InvalidSchema";
    case ErrorCode::kMissingColumn: return "MissingColumn";
    case ErrorCode::kNonBinaryTreatment: return "NonBinaryTreatment";
    case ErrorCode::kNonNumericCell: return "NonNumericCell";
    case ErrorCode::kEmptyDataset: return "EmptyDataset";
    case ErrorCode::kUnknownVariable: return "UnknownVariable";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kConfig: return "Config";
    case ErrorCode::kTooFewUnits: return "TooFewUnits";
    case ErrorCode::kEmptyArm: return "EmptyArm";
    case ErrorCode::kNoTreatedUnits: return "NoTreatedUnits";
    case ErrorCode::kDegenerateVariable: return "DegenerateVariable";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kNoFeasiblePoint: return "NoFeasiblePoint";
  }
  return "Unknown";
}

}  // namespace polopt
