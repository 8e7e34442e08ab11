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

// JSON and CSV forms of the library's results.
//
// Every float is rounded to 10 significant digits before it is written and
// objects keep insertion order, so identical inputs give byte-identical
// files.

#ifndef POLOPT_SERIALIZE_H_
#define POLOPT_SERIALIZE_H_

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "polopt/boundary.h"
#include "polopt/cate.h"
#include "polopt/dataset.h"
#include "polopt/threshold.h"
#include "polopt/welfare.h"

namespace polopt {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr int kSignificantDigits = 10;

// Rounded number, or null for NaN/inf.
Json Number(double value);
// "%.10g"; empty string for NaN.
std::string FormatNumber(double value);

Json ToJson(const WelfareReport& report);
Json ToJson(const EffectDecomposition& d);
Json ToJson(const CurvePoint& point);
Json ToJson(const ThresholdSearchResult& result);
Json ToJson(const ArmModel& model, std::span<const std::string> terms);
Json ToJson(const CateEstimates& est, std::span<const std::string> ids);
Json ToJson(const Histogram& h);
Json ToJson(const CateHistogram& h);
Json ToJson(const std::vector<ColumnSummary>& summary);
Json ToJson(const ProbabilityGrid& grid);
Json ToJson(const BoundaryPolyline& polyline);

// Header: c_<var>..., total_welfare, avg_welfare, n_treated, share_treated,
// feasible. Missing averages are empty cells.
void WriteCurveCsv(std::ostream& out, std::span<const std::string> vars,
                   std::span<const CurvePoint> curve);

// Two-space indented JSON with a trailing newline.
std::string Dump(const Json& json);

void WriteTextFile(const std::filesystem::path& path, const std::string& text);
std::string ReadTextFile(const std::filesystem::path& path);

}  // namespace polopt

#endif  // POLOPT_SERIALIZE_H_
