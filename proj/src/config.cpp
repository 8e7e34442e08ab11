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

#include "polopt/config.h"

#include <algorithm>
#include <charconv>
#include <functional>
#include <sstream>

#include "polopt/cate.h"
#include "polopt/error.h"
#include "polopt/serialize.h"

namespace polopt {
namespace {

std::string Trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void Bad(const std::string& key, const std::string& value,
                      const std::string& why) {
  throw Error(ErrorCode::kConfig,
              "config key '" + key + "' = '" + value + "': " + why);
}

double ToDouble(const std::string& key, const std::string& value) {
  const auto v = ParseNumber(value);
  if (!v) Bad(key, value, "expected a number");
  return *v;
}

std::size_t ToSize(const std::string& key, const std::string& value) {
  std::size_t out = 0;
  const auto [ptr, ec] =
      std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    Bad(key, value, "expected a non-negative integer");
  }
  return out;
}

bool ToBool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "yes" || value == "1") return true;
  if (value == "false" || value == "no" || value == "0") return false;
  Bad(key, value, "expected true or false");
}

std::optional<std::string> Optional(const std::string& value) {
  if (value.empty() || value == "none") return std::nullopt;
  return value;
}

std::string JoinList(const std::vector<std::string>& items, char sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out.push_back(sep);
    out += items[i];
  }
  return out;
}

}  // namespace

std::vector<std::string> SplitList(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream ss(text);
  while (std::getline(ss, item, sep)) {
    item = Trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

AlphaSource AlphaSource::Parse(const std::string& text) {
  AlphaSource a;
  if (text == "dim") return a;
  if (text == "ra") {
    a.kind = Kind::kRa;
    return a;
  }
  const auto v = ParseNumber(text);
  if (!v) Bad("alpha", text, "expected dim, ra or a number");
  a.kind = Kind::kValue;
  a.value = *v;
  return a;
}

std::string AlphaSource::ToString() const {
  switch (kind) {
    case Kind::kDim: return "dim";
    case Kind::kRa: return "ra";
    case Kind::kValue: return FormatNumber(value);
  }
  return "dim";
}

std::vector<std::string> RunConfig::RequiredCovariates() const {
  std::vector<std::string> out;
  auto add = [&](const std::string& name) {
    if (name.empty()) return;
    if (name == schema.outcome_col || name == schema.treatment_col) return;
    if (schema.id_col && name == *schema.id_col) return;
    if (tau_column && name == *tau_column) return;
    if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
  };
  for (const auto& c : schema.covariate_cols) add(c);
  for (const auto& t : model_terms) add(ModelTerm::Parse(t).covariate);
  for (const auto& group : searches) {
    for (const auto& v : group) add(v);
  }
  if (menu_fixed) add(*menu_fixed);
  if (menu_varying) add(*menu_varying);
  for (const auto& v : boundary_vars) add(v);
  return out;
}

void RunConfig::Validate() const {
  if (data_path.empty()) throw Error(ErrorCode::kConfig, "no data file given");
  if (schema.outcome_col.empty() && !tau_column) {
    throw Error(ErrorCode::kConfig, "no outcome column given");
  }
  if (schema.treatment_col.empty()) {
    throw Error(ErrorCode::kConfig, "no treatment column given");
  }
  constraints.Validate();
  for (const auto& group : searches) {
    if (group.empty()) throw Error(ErrorCode::kConfig, "empty search group");
  }
  if (menu_fixed.has_value() != menu_varying.has_value()) {
    throw Error(ErrorCode::kConfig,
                "menu needs both menu_fixed and menu_varying");
  }
  if (!boundary_vars.empty() && boundary_vars.size() != 2) {
    throw Error(ErrorCode::kConfig, "boundary needs exactly two variables");
  }
  if (hist_bins < 1) throw Error(ErrorCode::kConfig, "hist_bins must be >= 1");
  if (boundary_resolution < 2) {
    throw Error(ErrorCode::kConfig, "boundary_resolution must be >= 2");
  }
}

std::map<std::string, std::string> RunConfig::Echo() const {
  std::map<std::string, std::string> e;
  e["data"] = data_path.generic_string();
  e["delimiter"] = delimiter == '\t' ? "tab" : std::string(1, delimiter);
  e["outcome"] = schema.outcome_col;
  e["treatment"] = schema.treatment_col;
  e["covariates"] = JoinList(schema.covariate_cols, ',');
  e["id"] = schema.id_col.value_or("");
  e["terms"] = JoinList(model_terms, ',');
  e["tau_column"] = tau_column.value_or("");
  e["grid"] = grid.ToString();
  e["objective"] = std::string(ObjectiveName(objective));
  e["min_share"] = constraints.min_share ? FormatNumber(*constraints.min_share) : "";
  e["max_share"] = constraints.max_share ? FormatNumber(*constraints.max_share) : "";
  e["max_treated"] =
      constraints.max_treated ? std::to_string(*constraints.max_treated) : "";
  e["star_screen"] = star_screen ? "true" : "false";
  std::vector<std::string> groups;
  for (const auto& g : searches) groups.push_back(JoinList(g, ':'));
  e["search"] = JoinList(groups, ',');
  e["menu_fixed"] = menu_fixed.value_or("");
  e["menu_fixed_threshold"] =
      menu_fixed_threshold ? FormatNumber(*menu_fixed_threshold) : "";
  e["menu_varying"] = menu_varying.value_or("");
  e["boundary"] = JoinList(boundary_vars, ':');
  e["boundary_resolution"] = std::to_string(boundary_resolution);
  e["boundary_k"] = std::to_string(boundary_k);
  e["boundary_level"] = FormatNumber(boundary_level);
  e["hist_bins"] = std::to_string(hist_bins);
  e["alpha"] = alpha.ToString();
  e["output"] = output_dir.generic_string();
  return e;
}

ConfigMap ParseConfigText(const std::string& text) {
  ConfigMap out;
  std::istringstream ss(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kConfig,
                  "config line " + std::to_string(lineno) + " has no '='");
    }
    const std::string key = Trim(line.substr(0, eq));
    if (key.empty()) {
      throw Error(ErrorCode::kConfig,
                  "config line " + std::to_string(lineno) + " has no key");
    }
    out[key] = Trim(line.substr(eq + 1));
  }
  return out;
}

ConfigMap ReadConfigFile(const std::filesystem::path& path) {
  return ParseConfigText(ReadTextFile(path));
}

void ApplyConfig(const ConfigMap& values, RunConfig& config,
                 const std::filesystem::path& base_dir) {
  using Setter = std::function<void(const std::string&, const std::string&)>;
  const std::map<std::string, Setter> setters = {
      {"data",
       [&](const std::string&, const std::string& v) {
         std::filesystem::path p(v);
         if (p.is_relative() && !base_dir.empty() &&
             std::filesystem::exists(base_dir / p)) {
           p = base_dir / p;
         }
         config.data_path = p;
       }},
      {"delimiter",
       [&](const std::string& k, const std::string& v) {
         if (v == "tab" || v == "\\t") {
           config.delimiter = '\t';
         } else if (v == "comma" || v == ",") {
           config.delimiter = ',';
         } else if (v.size() == 1) {
           config.delimiter = v[0];
         } else {
           Bad(k, v, "expected comma, tab or a single character");
         }
       }},
      {"outcome", [&](const std::string&, const std::string& v) { config.schema.outcome_col = v; }},
      {"treatment", [&](const std::string&, const std::string& v) { config.schema.treatment_col = v; }},
      {"covariates", [&](const std::string&, const std::string& v) { config.schema.covariate_cols = SplitList(v); }},
      {"id", [&](const std::string&, const std::string& v) { config.schema.id_col = Optional(v); }},
      {"terms", [&](const std::string&, const std::string& v) { config.model_terms = SplitList(v); }},
      {"tau_column", [&](const std::string&, const std::string& v) { config.tau_column = Optional(v); }},
      {"grid", [&](const std::string&, const std::string& v) { config.grid = GridSource::Parse(v); }},
      {"objective", [&](const std::string&, const std::string& v) { config.objective = ParseObjective(v); }},
      {"min_share",
       [&](const std::string& k, const std::string& v) {
         config.constraints.min_share =
             Optional(v) ? std::optional<double>(ToDouble(k, v)) : std::nullopt;
       }},
      {"max_share",
       [&](const std::string& k, const std::string& v) {
         config.constraints.max_share =
             Optional(v) ? std::optional<double>(ToDouble(k, v)) : std::nullopt;
       }},
      {"max_treated",
       [&](const std::string& k, const std::string& v) {
         config.constraints.max_treated =
             Optional(v) ? std::optional<std::size_t>(ToSize(k, v)) : std::nullopt;
       }},
      {"star_screen", [&](const std::string& k, const std::string& v) { config.star_screen = ToBool(k, v); }},
      {"search",
       [&](const std::string&, const std::string& v) {
         config.searches.clear();
         for (const auto& group : SplitList(v)) {
           config.searches.push_back(SplitList(group, ':'));
         }
       }},
      {"menu_fixed", [&](const std::string&, const std::string& v) { config.menu_fixed = Optional(v); }},
      {"menu_fixed_threshold",
       [&](const std::string& k, const std::string& v) {
         config.menu_fixed_threshold =
             Optional(v) ? std::optional<double>(ToDouble(k, v)) : std::nullopt;
       }},
      {"menu_varying", [&](const std::string&, const std::string& v) { config.menu_varying = Optional(v); }},
      {"boundary", [&](const std::string&, const std::string& v) { config.boundary_vars = SplitList(v, ':'); }},
      {"boundary_resolution",
       [&](const std::string& k, const std::string& v) { config.boundary_resolution = ToSize(k, v); }},
      {"boundary_k", [&](const std::string& k, const std::string& v) { config.boundary_k = ToSize(k, v); }},
      {"boundary_level",
       [&](const std::string& k, const std::string& v) { config.boundary_level = ToDouble(k, v); }},
      {"hist_bins",
       [&](const std::string& k, const std::string& v) {
         config.hist_bins = static_cast<int>(ToSize(k, v));
       }},
      {"alpha", [&](const std::string&, const std::string& v) { config.alpha = AlphaSource::Parse(v); }},
      {"output", [&](const std::string&, const std::string& v) { config.output_dir = v; }},
      {"threads",
       [&](const std::string& k, const std::string& v) {
         config.threads = static_cast<int>(ToSize(k, v));
       }},
  };
  for (const auto& [key, value] : values) {
    const auto it = setters.find(key);
    if (it == setters.end()) {
      throw Error(ErrorCode::kConfig, "unknown config key '" + key + "'");
    }
    it->second(key, value);
  }
}

}  // namespace polopt
