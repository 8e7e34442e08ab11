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

// Program datasets: per-unit outcome, binary treatment and covariates.
//
// Outcomes are kept in the units of the input file (the bundled NSW data is
// in thousands of dollars) and are never rescaled.

#ifndef POLOPT_DATASET_H_
#define POLOPT_DATASET_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "polopt/assignment.h"

namespace polopt {

struct ColumnSchema {
  std::string outcome_col;
  std::string treatment_col;
  std::vector<std::string> covariate_cols;
  std::optional<std::string> id_col;

  // Throws kInvalidSchema if the named roles overlap or repeat.
  void Validate() const;
};

class PolicyDataset {
 public:
  PolicyDataset(std::vector<double> outcome, AssignmentVector treatment,
                std::vector<std::string> covariate_names,
                std::vector<std::vector<double>> covariate_columns,
                std::vector<std::string> ids, std::string outcome_name = "y",
                std::string treatment_name = "t");

  std::size_t size() const { return outcome_.size(); }
  std::size_t num_covariates() const { return covariate_names_.size(); }

  std::span<const double> outcome() const { return outcome_; }
  const AssignmentVector& treatment() const { return treatment_; }
  const std::vector<std::string>& ids() const { return ids_; }
  const std::string& outcome_name() const { return outcome_name_; }
  const std::string& treatment_name() const { return treatment_name_; }
  const std::vector<std::string>& covariate_names() const {
    return covariate_names_;
  }

  std::optional<std::size_t> CovariateIndex(std::string_view name) const;
  std::span<const double> covariate(std::size_t j) const {
    return covariates_[j];
  }
  // Throws kUnknownVariable.
  std::span<const double> Covariate(std::string_view name) const;

  std::size_t CountTreated() const { return treatment_.CountTreated(); }

  friend bool operator==(const PolicyDataset&, const PolicyDataset&) = default;

 private:
  std::vector<double> outcome_;
  AssignmentVector treatment_;
  std::vector<std::string> covariate_names_;
  std::vector<std::vector<double>> covariates_;  // column-major
  std::vector<std::string> ids_;
  std::string outcome_name_;
  std::string treatment_name_;
};

// Parses a delimited text stream with a header row. Only schema columns are
// parsed; other columns may hold anything. Row order is preserved.
//
// Errors: kMissingColumn, kNonBinaryTreatment, kNonNumericCell,
// kEmptyDataset, kInvalidSchema.
PolicyDataset LoadDataset(std::istream& source, const ColumnSchema& schema,
                          char delimiter = ',');

// Opens `path`; relative paths that do not exist are retried under the
// directory named by POLOPT_DATA_DIR. Throws kIo when nothing is found.
std::filesystem::path ResolveDataPath(const std::filesystem::path& path);
PolicyDataset LoadDatasetFile(const std::filesystem::path& path,
                              const ColumnSchema& schema,
                              char delimiter = ',');

// Writes id (if the dataset has one), outcome, treatment and covariates with
// round-trip precision.
void WriteDataset(std::ostream& out, const PolicyDataset& ds,
                  char delimiter = ',');

// Strict decimal parser: optional sign, digits, optional fraction and
// exponent. No locale, no surrounding junk, finite values only.
std::optional<double> ParseNumber(std::string_view text);

enum class ArmLabel { kControl = 0, kTreated = 1 };

struct ColumnSummary {
  std::string column;
  ArmLabel arm;
  std::size_t count = 0;
  double mean = 0.0;
  double sd = 0.0;
  double min = 0.0;
  double max = 0.0;
};

// One row per (column, arm) for the outcome and every covariate, control arm
// first. Empty arms report count 0 and NaN statistics.
std::vector<ColumnSummary> Summarize(const PolicyDataset& ds);

}  // namespace polopt

#endif  // POLOPT_DATASET_H_
