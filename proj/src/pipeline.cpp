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

#include "polopt/pipeline.h"

#include <ostream>
#include <sstream>

#include "polopt/boundary.h"
#include "polopt/checksum.h"
#include "polopt/kernels.h"
#include "polopt/numeric.h"
#include "polopt/welfare.h"

#ifndef POLOPT_VERSION
#define POLOPT_VERSION "dev"
#endif

namespace polopt {
namespace {

std::string Join(const std::vector<std::string>& items, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

Json ConstraintsJson(const Constraints& c) {
  Json j;
  j["min_share"] = c.min_share ? Number(*c.min_share) : Json(nullptr);
  j["max_share"] = c.max_share ? Number(*c.max_share) : Json(nullptr);
  j["max_treated"] = c.max_treated ? Json(*c.max_treated) : Json(nullptr);
  return j;
}

std::string DescribePoint(const CurvePoint& p) {
  std::ostringstream ss;
  ss << "c=(";
  for (std::size_t d = 0; d < p.c.size(); ++d) {
    if (d) ss << ", ";
    ss << FormatNumber(p.c[d]);
  }
  ss << ") total_welfare=" << FormatNumber(p.report.total_welfare)
     << " avg_welfare="
     << (p.report.avg_welfare ? FormatNumber(*p.report.avg_welfare) : "null")
     << " n_treated=" << p.report.n_treated
     << " share=" << FormatNumber(p.report.share_treated);
  return ss.str();
}

}  // namespace

int ExitCodeFor(const Error& error) {
  switch (Classify(error.code())) {
    case ErrorClass::kData: return kExitDataError;
    case ErrorClass::kEstimation: return kExitModelError;
    case ErrorClass::kInfeasible: return kExitInfeasible;
  }
  return kExitDataError;
}

std::string GroupStem(const std::vector<std::string>& vars) {
  return Join(vars, "_");
}

Pipeline::Pipeline(RunConfig config, std::ostream& out, std::ostream& err)
    : config_(std::move(config)), out_(out), err_(err) {}

int Pipeline::Run(std::string_view command) {
  outputs_.clear();
  timings_.clear();
  int code = kExitOk;
  try {
    config_.Validate();
    SetKernelThreads(config_.threads);
    std::filesystem::create_directories(config_.output_dir);
    code = Dispatch(command);
  } catch (const Error& e) {
    err_ << "error [" << ErrorCodeName(e.code()) << "]: " << e.what() << '\n';
    return ExitCodeFor(e);
  } catch (const std::filesystem::filesystem_error& e) {
    err_ << "error [Io]: " << e.what() << '\n';
    return kExitDataError;
  }
  try {
    WriteManifest(command);
  } catch (const Error& e) {
    err_ << "error [" << ErrorCodeName(e.code()) << "]: " << e.what() << '\n';
    return ExitCodeFor(e);
  }
  return code;
}

int Pipeline::Dispatch(std::string_view command) {
  if (command == "estimate") {
    Timed("estimate", [&] { Estimate(); });
    return kExitOk;
  }
  if (command == "welfare") {
    Timed("welfare", [&] { Welfare(); });
    return kExitOk;
  }
  if (command == "search") {
    if (config_.searches.empty()) {
      throw Error(ErrorCode::kConfig, "search needs at least one variable");
    }
    return Timed("search", [&] { return Search(); }) ? kExitOk : kExitInfeasible;
  }
  if (command == "menu") {
    if (!config_.menu_fixed) {
      throw Error(ErrorCode::kConfig, "menu needs menu_fixed and menu_varying");
    }
    return Timed("menu", [&] { return Menu(); }) ? kExitOk : kExitInfeasible;
  }
  if (command == "boundary") {
    if (config_.boundary_vars.size() != 2) {
      throw Error(ErrorCode::kConfig, "boundary needs two variables");
    }
    Timed("boundary", [&] { Boundary(); });
    return kExitOk;
  }
  if (command == "all") {
    bool feasible = true;
    if (!config_.tau_column) Timed("estimate", [&] { Estimate(); });
    Timed("welfare", [&] { Welfare(); });
    if (!config_.searches.empty()) {
      feasible = Timed("search", [&] { return Search(); }) && feasible;
    }
    if (config_.menu_fixed) {
      feasible = Timed("menu", [&] { return Menu(); }) && feasible;
    }
    if (config_.boundary_vars.size() == 2) {
      Timed("boundary", [&] { Boundary(); });
    }
    return feasible ? kExitOk : kExitInfeasible;
  }
  throw Error(ErrorCode::kConfig, "unknown command '" + std::string(command) + "'");
}

const PolicyDataset& Pipeline::Data() {
  if (!data_) {
    ColumnSchema schema = config_.schema;
    if (config_.tau_column) schema.outcome_col = *config_.tau_column;
    schema.covariate_cols = config_.RequiredCovariates();
    data_ = LoadDatasetFile(config_.data_path, schema, config_.delimiter);
  }
  return *data_;
}

const std::vector<double>& Pipeline::Tau() {
  if (!tau_) {
    if (config_.tau_column) {
      const auto y = Data().outcome();
      tau_ = std::vector<double>(y.begin(), y.end());
    } else {
      if (!cate_) {
        const auto spec = ModelSpec::Parse(config_.model_terms);
        cate_ = EstimateCate(Data(), spec);
      }
      tau_ = cate_->tau;
    }
  }
  return *tau_;
}

const AssignmentVector& Pipeline::Screen() {
  if (!screen_) {
    screen_ = config_.star_screen ? OptimalAssignment(Tau())
                                  : AssignmentVector(Tau().size(), true);
  }
  return *screen_;
}

double Pipeline::Alpha() {
  switch (config_.alpha.kind) {
    case AlphaSource::Kind::kValue:
      return config_.alpha.value;
    case AlphaSource::Kind::kRa:
      return Mean(Tau());
    case AlphaSource::Kind::kDim:
      if (config_.tau_column) return Mean(Tau());
      Tau();
      return cate_->ate_dim;
  }
  return 0.0;
}

void Pipeline::Estimate() {
  if (config_.tau_column) {
    throw Error(ErrorCode::kConfig,
                "estimate is unavailable when tau_column supplies tau directly");
  }
  const PolicyDataset& ds = Data();
  Tau();
  const CateEstimates& est = *cate_;

  Json body;
  body["outcome"] = ds.outcome_name();
  body["treatment"] = ds.treatment_name();
  Json cate = ToJson(est, ds.ids());
  for (auto& [key, value] : cate.items()) body[key] = value;
  body["summary"] = ToJson(Summarize(ds));
  WriteJson("cate.json", "cate", body);

  Json hist;
  hist["bins"] = config_.hist_bins;
  Json h = ToJson(MakeCateHistogram(est, config_.hist_bins));
  for (auto& [key, value] : h.items()) hist[key] = value;
  WriteJson("hist.json", "histogram", hist);

  out_ << "estimate: n=" << ds.size() << " n_treated=" << ds.CountTreated()
       << " ate_dim=" << FormatNumber(est.ate_dim)
       << " (se " << FormatNumber(est.dim_se) << ")"
       << " ate_ra=" << FormatNumber(est.ate_ra)
       << " att_ra=" << FormatNumber(est.att_ra);
  if (!est.treated_model.rank_ok || !est.control_model.rank_ok) {
    out_ << " [rank deficient design]";
  }
  out_ << '\n';
}

void Pipeline::Welfare() {
  const auto& tau = Tau();
  const AssignmentVector& actual = Data().treatment();
  const WelfareReport report = ActualWelfare(tau, actual);

  Json body = ToJson(report);
  body["n"] = tau.size();
  body["n_star"] = OptimalAssignment(tau).CountTreated();
  body["decomposition"] = report.n_treated > 0
                              ? ToJson(DecomposeEffect(tau, actual, Alpha()))
                              : Json(nullptr);
  WriteJson("welfare.json", "welfare", body);

  out_ << "welfare: W=" << FormatNumber(report.total_welfare)
       << " W*=" << FormatNumber(report.w_star)
       << " regret=" << FormatNumber(report.regret)
       << " n_treated=" << report.n_treated << '\n';
}

ThresholdSearchResult Pipeline::RunSearch(const std::vector<std::string>& vars) {
  const PolicyDataset& ds = Data();
  std::vector<SelectionAxis> axes;
  for (const auto& v : vars) {
    const auto x = ds.Covariate(v);
    axes.push_back({v, x, BuildGrid(x, config_.grid)});
  }
  return SearchGrid(Tau(), Screen(), axes, config_.objective,
                    config_.constraints);
}

bool Pipeline::Search() {
  bool all_feasible = true;
  for (const auto& vars : config_.searches) {
    const ThresholdSearchResult result = RunSearch(vars);
    const std::string stem = GroupStem(vars);

    Json body;
    body["screen"] = config_.star_screen ? "t_star" : "none";
    body["grid"] = config_.grid.ToString();
    body["constraints"] = ConstraintsJson(config_.constraints);
    body["decomposition"] = nullptr;
    if (const CurvePoint* best = result.best()) {
      std::vector<Cut> cuts;
      for (std::size_t d = 0; d < vars.size(); ++d) {
        cuts.push_back({Data().Covariate(vars[d]), best->c[d]});
      }
      const AssignmentVector rule = AssignConjunction(Screen(), cuts);
      body["decomposition"] = ToJson(DecomposeEffect(Tau(), rule, Alpha()));
    }
    Json r = ToJson(result);
    for (auto& [key, value] : r.items()) body[key] = value;
    WriteJson("search_" + stem + ".json", "search", body);

    std::ostringstream csv;
    WriteCurveCsv(csv, vars, result.curve);
    WriteOutput("curve_" + stem + ".csv", csv.str());

    out_ << "search " << Join(vars, " x ") << ": ";
    if (const CurvePoint* best = result.best()) {
      out_ << "best " << DescribePoint(*best)
           << " angle_solution=" << (result.angle_solution ? "yes" : "no")
           << '\n';
    } else {
      out_ << "no feasible point\n";
      err_ << "search " << Join(vars, " x ")
           << ": no grid point satisfies the constraints\n";
      all_feasible = false;
    }
  }
  return all_feasible;
}

bool Pipeline::Menu() {
  const PolicyDataset& ds = Data();
  const std::string& fixed_var = *config_.menu_fixed;
  const std::string& varying_var = *config_.menu_varying;
  const auto fixed_x = ds.Covariate(fixed_var);
  const auto varying_x = ds.Covariate(varying_var);

  double fixed_c = 0.0;
  std::string fixed_source;
  if (config_.menu_fixed_threshold) {
    fixed_c = *config_.menu_fixed_threshold;
    fixed_source = "explicit";
  } else {
    const ThresholdSearchResult uni = RunSearch({fixed_var});
    if (!uni.best()) {
      err_ << "menu: no feasible optimum for '" << fixed_var << "'\n";
      return false;
    }
    fixed_c = uni.best()->c[0];
    fixed_source = "univariate_optimum";
  }

  const ThresholdGrid grid = BuildGrid(varying_x, config_.grid);
  std::vector<CurvePoint> rows = ScenarioMenu(
      Tau(), Screen(), Cut{fixed_x, fixed_c}, varying_x, grid, config_.objective);
  const auto best = SelectBest(rows, config_.objective);

  Json body;
  body["objective"] = std::string(ObjectiveName(config_.objective));
  body["fixed"] = {{"var", fixed_var},
                   {"threshold", Number(fixed_c)},
                   {"source", fixed_source}};
  body["varying"] = varying_var;
  body["best_index"] = best ? Json(*best) : Json(nullptr);
  Json arr = Json::array();
  for (const auto& p : rows) arr.push_back(ToJson(p));
  body["rows"] = std::move(arr);
  const std::string stem = "menu_" + fixed_var + "_" + varying_var;
  WriteJson(stem + ".json", "menu", body);

  std::ostringstream csv;
  const std::vector<std::string> vars = {fixed_var, varying_var};
  WriteCurveCsv(csv, vars, rows);
  WriteOutput(stem + ".csv", csv.str());

  out_ << "menu " << fixed_var << " >= " << FormatNumber(fixed_c) << ", "
       << varying_var << " varying: " << rows.size() << " rows";
  if (best) out_ << ", best " << DescribePoint(rows[*best]);
  out_ << '\n';
  return best.has_value();
}

void Pipeline::Boundary() {
  const PolicyDataset& ds = Data();
  const auto& vars = config_.boundary_vars;
  const auto x = ds.Covariate(vars[0]);
  const auto z = ds.Covariate(vars[1]);
  const AssignmentVector t_star = OptimalAssignment(Tau());

  GridOptions options;
  options.resolution = config_.boundary_resolution;
  options.k = config_.boundary_k;
  const ProbabilityGrid grid = EstimateProbabilityGrid(x, z, t_star, options);
  const BoundaryPolyline polyline = ExtractBoundary(grid, config_.boundary_level);
  const ThresholdSearchResult quadrant = RunSearch(vars);

  Json body;
  body["vars"] = vars;
  body["level"] = Number(config_.boundary_level);
  body["k"] = grid.k;
  body["resolution"] = config_.boundary_resolution;
  body["grid"] = ToJson(grid);
  body["polyline"] = ToJson(polyline);
  Json scatter;
  Json sx = Json::array();
  Json sz = Json::array();
  Json st = Json::array();
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx.push_back(Number(x[i]));
    sz.push_back(Number(z[i]));
    st.push_back(t_star[i] ? 1 : 0);
  }
  scatter["x"] = std::move(sx);
  scatter["z"] = std::move(sz);
  scatter["t_star"] = std::move(st);
  body["scatter"] = std::move(scatter);
  body["quadrant"] = quadrant.best() ? ToJson(*quadrant.best()) : Json(nullptr);
  WriteJson("boundary.json", "boundary", body);

  out_ << "boundary " << vars[0] << " x " << vars[1] << ": k=" << grid.k
       << " segments=" << polyline.segments.size() << '\n';
}

void Pipeline::WriteJson(const std::string& name, const std::string& kind,
                         const Json& body) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = kind;
  for (const auto& [key, value] : body.items()) j[key] = value;
  WriteOutput(name, Dump(j));
}

void Pipeline::WriteOutput(const std::string& name, const std::string& text) {
  WriteTextFile(config_.output_dir / name, text);
  outputs_.push_back(name);
}

void Pipeline::WriteManifest(std::string_view command) {
  Json m;
  m["schema_version"] = kSchemaVersion;
  m["kind"] = "manifest";
  m["artifact_version"] = POLOPT_VERSION;
  m["command"] = std::string(command);
  Json echo;
  for (const auto& [k, v] : config_.Echo()) echo[k] = v;
  m["config"] = std::move(echo);
  const auto resolved = ResolveDataPath(config_.data_path);
  m["input"] = {{"path", resolved.generic_string()},
                {"sha256", Sha256File(resolved)}};
  m["outputs"] = outputs_;
  Json timings;
  for (const auto& [step, ms] : timings_) timings[step + "_ms"] = Number(ms);
  m["timings"] = timings.is_null() ? Json::object() : timings;
  WriteTextFile(config_.output_dir / "manifest.json", Dump(m));
}

bool VerifyManifest(const std::filesystem::path& manifest_path,
                    std::string* message) {
  const Json m = Json::parse(ReadTextFile(manifest_path));
  const std::string path = m.at("input").at("path").get<std::string>();
  const std::string expected = m.at("input").at("sha256").get<std::string>();
  std::string actual;
  try {
    actual = Sha256File(path);
  } catch (const Error& e) {
    if (message) *message = e.what();
    return false;
  }
  if (actual != expected) {
    if (message) {
      *message = "checksum mismatch for " + path + ": manifest has " +
                 expected + ", file has " + actual;
    }
    return false;
  }
  if (message) *message = "input unchanged: " + path;
  return true;
}

}  // namespace polopt
