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

// Run configuration for the command-line pipeline.
//
// Config files are flat `key = value` text. `#` starts a comment, list
// values are comma separated, and variable groups inside a list use ':'
// (`search = age, re74, age:re75`). See docs/config.md for every key.

#ifndef POLOPT_CONFIG_H_
#define POLOPT_CONFIG_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "polopt/dataset.h"
#include "polopt/threshold.h"

namespace polopt {

// Where alpha for the effect decomposition comes from.
struct AlphaSource {
  enum class Kind { kDim, kRa, kValue } kind = Kind::kDim;
  double value = 0.0;

  static AlphaSource Parse(const std::string& text);
  std::string ToString() const;
};

struct RunConfig {
  std::filesystem::path data_path;
  char delimiter = ',';
  ColumnSchema schema;
  std::vector<std::string> model_terms;
  // Take tau straight from this data column instead of estimating it.
  std::optional<std::string> tau_column;

  GridSource grid;
  Objective objective = Objective::kAverageWelfare;
  Constraints constraints;
  bool star_screen = true;

  // Each entry is one search: a single variable or a ':'-joined group.
  std::vector<std::vector<std::string>> searches;
  std::optional<std::string> menu_fixed;
  std::optional<double> menu_fixed_threshold;
  std::optional<std::string> menu_varying;
  std::vector<std::string> boundary_vars;
  std::size_t boundary_resolution = 100;
  std::size_t boundary_k = 0;
  double boundary_level = 0.5;
  int hist_bins = 20;
  AlphaSource alpha;

  std::filesystem::path output_dir = "polopt_out";
  int threads = 0;

  // Covariates the run needs, in first-use order: schema covariates, model
  // terms, then every selection variable.
  std::vector<std::string> RequiredCovariates() const;
  // Throws kConfig.
  void Validate() const;
  // Flat key/value echo for the run manifest.
  std::map<std::string, std::string> Echo() const;
};

// Parsed `key = value` pairs; later keys override earlier ones.
using ConfigMap = std::map<std::string, std::string>;

ConfigMap ParseConfigText(const std::string& text);
ConfigMap ReadConfigFile(const std::filesystem::path& path);

// Applies `values` on top of `config`. Unknown keys throw kConfig. A relative
// `data` path is resolved against `base_dir` when that file exists.
void ApplyConfig(const ConfigMap& values, RunConfig& config,
                 const std::filesystem::path& base_dir = {});

std::vector<std::string> SplitList(const std::string& text, char sep = ',');

}  // namespace polopt

#endif  // POLOPT_CONFIG_H_
