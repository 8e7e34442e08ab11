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

#include "polopt/dataset.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <set>

#include "polopt/error.h"
#include "polopt/numeric.h"

namespace polopt {
namespace {

std::vector<std::string> SplitRecord(std::string_view line, char delimiter) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(ch);
      }
    } else if (ch == '"' && field.empty()) {
      quoted = true;
    } else if (ch == delimiter) {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field.push_back(ch);
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

bool ReadRecordLine(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

std::string CellLocation(std::size_t row, std::string_view column) {
  return "row " + std::to_string(row) + ", column '" + std::string(column) +
         "'";
}

std::string FormatRoundTrip(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void ColumnSchema::Validate() const {
  if (outcome_col.empty() || treatment_col.empty()) {
    throw Error(ErrorCode::kInvalidSchema,
                "schema needs both an outcome and a treatment column");
  }
  std::set<std::string> seen;
  auto claim = [&](const std::string& name) {
    if (!seen.insert(name).second) {
      throw Error(ErrorCode::kInvalidSchema,
                  "column '" + name + "' is used more than once in the schema");
    }
  };
  claim(outcome_col);
  claim(treatment_col);
  for (const auto& c : covariate_cols) claim(c);
  if (id_col) claim(*id_col);
}

PolicyDataset::PolicyDataset(std::vector<double> outcome,
                             AssignmentVector treatment,
                             std::vector<std::string> covariate_names,
                             std::vector<std::vector<double>> covariate_columns,
                             std::vector<std::string> ids,
                             std::string outcome_name,
                             std::string treatment_name)
    : outcome_(std::move(outcome)),
      treatment_(std::move(treatment)),
      covariate_names_(std::move(covariate_names)),
      covariates_(std::move(covariate_columns)),
      ids_(std::move(ids)),
      outcome_name_(std::move(outcome_name)),
      treatment_name_(std::move(treatment_name)) {
  const std::size_t n = outcome_.size();
  if (treatment_.size() != n || covariates_.size() != covariate_names_.size()) {
    throw Error(ErrorCode::kLengthMismatch, "dataset columns are misaligned");
  }
  for (const auto& col : covariates_) {
    if (col.size() != n) {
      throw Error(ErrorCode::kLengthMismatch, "dataset columns are misaligned");
    }
  }
  if (ids_.empty()) {
    ids_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) ids_.push_back(std::to_string(i + 1));
  } else if (ids_.size() != n) {
    throw Error(ErrorCode::kLengthMismatch, "dataset ids are misaligned");
  }
  for (const double v : outcome_) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kNonNumericCell, "non-finite outcome value");
    }
  }
  for (const auto& col : covariates_) {
    for (const double v : col) {
      if (!std::isfinite(v)) {
        throw Error(ErrorCode::kNonNumericCell, "non-finite covariate value");
      }
    }
  }
}

std::optional<std::size_t> PolicyDataset::CovariateIndex(
    std::string_view name) const {
  for (std::size_t j = 0; j < covariate_names_.size(); ++j) {
    if (covariate_names_[j] == name) return j;
  }
  return std::nullopt;
}

std::span<const double> PolicyDataset::Covariate(std::string_view name) const {
  const auto j = CovariateIndex(name);
  if (!j) {
    throw Error(ErrorCode::kUnknownVariable,
                "unknown variable '" + std::string(name) + "'");
  }
  return covariates_[*j];
}

std::optional<double> ParseNumber(std::string_view text) {
  text = Trim(text);
  if (text.empty()) return std::nullopt;
  // from_chars rejects a leading '+', accept it explicitly.
  if (text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return std::nullopt;
  // Only plain decimal notation; from_chars alone would also take "inf",
  // "nan" and hex floats under some formats.
  for (const char ch : text) {
    const bool ok = (ch >= '0' && ch <= '9') || ch == '.' || ch == '-' ||
                    ch == 'e' || ch == 'E' || ch == '+';
    if (!ok) return std::nullopt;
  }
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(),
                                         value, std::chars_format::general);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    return std::nullopt;
  }
  if (!std::isfinite(value)) return std::nullopt;
  return value;
}

PolicyDataset LoadDataset(std::istream& source, const ColumnSchema& schema,
                          char delimiter) {
  schema.Validate();

  std::string line;
  if (!ReadRecordLine(source, line)) {
    throw Error(ErrorCode::kEmptyDataset, "input has no header row");
  }
  const auto header = SplitRecord(line, delimiter);
  auto locate = [&](const std::string& name) -> std::size_t {
    for (std::size_t k = 0; k < header.size(); ++k) {
      if (Trim(header[k]) == name) return k;
    }
    throw Error(ErrorCode::kMissingColumn,
                "column '" + name + "' is not in the header");
  };
  const std::size_t y_idx = locate(schema.outcome_col);
  const std::size_t t_idx = locate(schema.treatment_col);
  std::vector<std::size_t> x_idx;
  for (const auto& c : schema.covariate_cols) x_idx.push_back(locate(c));
  std::optional<std::size_t> id_idx;
  if (schema.id_col) id_idx = locate(*schema.id_col);

  std::vector<double> outcome;
  std::vector<std::uint8_t> treatment;
  std::vector<std::vector<double>> covariates(x_idx.size());
  std::vector<std::string> ids;

  std::size_t row = 0;
  while (ReadRecordLine(source, line)) {
    if (Trim(line).empty()) continue;
    ++row;
    const auto fields = SplitRecord(line, delimiter);
    auto cell = [&](std::size_t k, const std::string& name) -> std::string_view {
      if (k >= fields.size()) {
        throw Error(ErrorCode::kNonNumericCell,
                    "missing cell at " + CellLocation(row, name));
      }
      return fields[k];
    };
    auto number = [&](std::size_t k, const std::string& name) {
      const auto v = ParseNumber(cell(k, name));
      if (!v) {
        throw Error(ErrorCode::kNonNumericCell,
                    "non-numeric value '" + std::string(cell(k, name)) +
                        "' at " + CellLocation(row, name));
      }
      return *v;
    };

    outcome.push_back(number(y_idx, schema.outcome_col));
    const double t = number(t_idx, schema.treatment_col);
    if (t != 0.0 && t != 1.0) {
      throw Error(ErrorCode::kNonBinaryTreatment,
                  "treatment value '" + std::string(cell(t_idx, schema.treatment_col)) +
                      "' at " + CellLocation(row, schema.treatment_col) +
                      " is not 0 or 1");
    }
    treatment.push_back(t == 1.0 ? 1 : 0);
    for (std::size_t j = 0; j < x_idx.size(); ++j) {
      covariates[j].push_back(number(x_idx[j], schema.covariate_cols[j]));
    }
    if (id_idx) ids.emplace_back(Trim(cell(*id_idx, *schema.id_col)));
  }
  if (row == 0) {
    throw Error(ErrorCode::kEmptyDataset, "input has a header but no rows");
  }
  return PolicyDataset(std::move(outcome), AssignmentVector(std::move(treatment)),
                       schema.covariate_cols, std::move(covariates),
                       std::move(ids), schema.outcome_col,
                       schema.treatment_col);
}

std::filesystem::path ResolveDataPath(const std::filesystem::path& path) {
  namespace fs = std::filesystem;
  if (fs::exists(path)) return path;
  if (path.is_relative()) {
    if (const char* dir = std::getenv("POLOPT_DATA_DIR"); dir && *dir) {
      const fs::path candidate = fs::path(dir) / path;
      if (fs::exists(candidate)) return candidate;
    }
  }
  throw Error(ErrorCode::kIo, "data file not found: " + path.string());
}

PolicyDataset LoadDatasetFile(const std::filesystem::path& path,
                              const ColumnSchema& schema, char delimiter) {
  const auto resolved = ResolveDataPath(path);
  std::ifstream in(resolved, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + resolved.string());
  return LoadDataset(in, schema, delimiter);
}

void WriteDataset(std::ostream& out, const PolicyDataset& ds, char delimiter) {
  out << "id" << delimiter << ds.outcome_name() << delimiter
      << ds.treatment_name();
  for (const auto& name : ds.covariate_names()) out << delimiter << name;
  out << '\n';
  for (std::size_t i = 0; i < ds.size(); ++i) {
    out << ds.ids()[i] << delimiter << FormatRoundTrip(ds.outcome()[i])
        << delimiter << (ds.treatment()[i] ? 1 : 0);
    for (std::size_t j = 0; j < ds.num_covariates(); ++j) {
      out << delimiter << FormatRoundTrip(ds.covariate(j)[i]);
    }
    out << '\n';
  }
}

std::vector<ColumnSummary> Summarize(const PolicyDataset& ds) {
  std::vector<std::pair<std::string, std::span<const double>>> columns;
  columns.emplace_back(ds.outcome_name(), ds.outcome());
  for (std::size_t j = 0; j < ds.num_covariates(); ++j) {
    columns.emplace_back(ds.covariate_names()[j], ds.covariate(j));
  }

  std::vector<ColumnSummary> rows;
  for (const auto& [name, values] : columns) {
    for (const ArmLabel arm : {ArmLabel::kControl, ArmLabel::kTreated}) {
      std::vector<double> subset;
      for (std::size_t i = 0; i < ds.size(); ++i) {
        if (ds.treatment()[i] == (arm == ArmLabel::kTreated)) {
          subset.push_back(values[i]);
        }
      }
      ColumnSummary s;
      s.column = name;
      s.arm = arm;
      s.count = subset.size();
      if (subset.empty()) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        s.mean = s.sd = s.min = s.max = nan;
      } else {
        s.mean = Mean(subset);
        s.sd = std::sqrt(SampleVariance(subset));
        const auto [lo, hi] = std::minmax_element(subset.begin(), subset.end());
        s.min = *lo;
        s.max = *hi;
      }
      rows.push_back(std::move(s));
    }
  }
  return rows;
}

}  // namespace polopt
