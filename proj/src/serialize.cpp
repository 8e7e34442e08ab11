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

#include "polopt/serialize.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "polopt/error.h"
#include "polopt/numeric.h"

namespace polopt {

Json Number(double value) {
  if (!std::isfinite(value)) return nullptr;
  return RoundSignificant(value, kSignificantDigits);
}

std::string FormatNumber(double value) {
  if (!std::isfinite(value)) return "";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.*g", kSignificantDigits, value);
  return buf;
}

Json ToJson(const WelfareReport& r) {
  Json j;
  j["total_welfare"] = Number(r.total_welfare);
  j["avg_welfare"] = r.avg_welfare ? Number(*r.avg_welfare) : Json(nullptr);
  j["n_treated"] = r.n_treated;
  j["share_treated"] = Number(r.share_treated);
  j["w_star"] = Number(r.w_star);
  j["regret"] = Number(r.regret);
  return j;
}

Json ToJson(const EffectDecomposition& d) {
  Json j;
  j["gamma"] = Number(d.gamma);
  j["alpha"] = Number(d.alpha);
  j["beta"] = Number(d.beta);
  return j;
}

Json ToJson(const CurvePoint& p) {
  Json j;
  Json c = Json::array();
  for (const double v : p.c) c.push_back(Number(v));
  j["c"] = std::move(c);
  j["report"] = ToJson(p.report);
  j["feasible"] = p.feasible;
  return j;
}

Json ToJson(const ThresholdSearchResult& r) {
  Json j;
  j["selection_vars"] = r.selection_vars;
  j["objective"] = std::string(ObjectiveName(r.objective));
  j["grid_shape"] = r.grid_shape;
  j["best"] = r.best() ? ToJson(*r.best()) : Json(nullptr);
  j["best_index"] = r.best_index ? Json(*r.best_index) : Json(nullptr);
  j["angle_solution"] = r.angle_solution;
  Json curve = Json::array();
  for (const auto& p : r.curve) curve.push_back(ToJson(p));
  j["curve"] = std::move(curve);
  return j;
}

Json ToJson(const ArmModel& m, std::span<const std::string> terms) {
  Json j;
  j["arm"] = std::string(ArmName(m.arm));
  j["num_units"] = m.num_units;
  j["intercept"] = Number(m.intercept);
  Json coef;
  for (std::size_t k = 0; k < m.coefficients.size(); ++k) {
    coef[k < terms.size() ? terms[k] : std::to_string(k)] =
        Number(m.coefficients[k]);
  }
  j["coefficients"] = coef.is_null() ? Json::object() : coef;
  j["residual_variance"] = Number(m.residual_variance);
  j["rank"] = m.rank;
  j["rank_ok"] = m.rank_ok;
  return j;
}

Json ToJson(const CateEstimates& est, std::span<const std::string> ids) {
  Json j;
  j["ate_dim"] = Number(est.ate_dim);
  j["dim_se"] = Number(est.dim_se);
  j["ate_ra"] = Number(est.ate_ra);
  j["att_ra"] = Number(est.att_ra);
  j["n"] = est.tau.size();
  j["n_treated"] = est.tau_treated.size();
  j["terms"] = est.terms;
  j["models"] = {ToJson(est.treated_model, est.terms),
                 ToJson(est.control_model, est.terms)};
  Json tau = Json::array();
  for (const double t : est.tau) tau.push_back(Number(t));
  j["ids"] = std::vector<std::string>(ids.begin(), ids.end());
  j["tau"] = std::move(tau);
  Json tau1 = Json::array();
  for (const double t : est.tau_treated) tau1.push_back(Number(t));
  j["tau_treated"] = std::move(tau1);
  return j;
}

Json ToJson(const Histogram& h) {
  Json j;
  Json edges = Json::array();
  for (const double e : h.edges) edges.push_back(Number(e));
  j["edges"] = std::move(edges);
  j["counts"] = h.counts;
  return j;
}

Json ToJson(const CateHistogram& h) {
  Json j;
  j["tau"] = ToJson(h.tau);
  j["tau_treated"] = ToJson(h.tau_treated);
  return j;
}

Json ToJson(const std::vector<ColumnSummary>& summary) {
  Json rows = Json::array();
  for (const auto& s : summary) {
    Json r;
    r["column"] = s.column;
    r["arm"] = s.arm == ArmLabel::kTreated ? "treated" : "control";
    r["count"] = s.count;
    r["mean"] = Number(s.mean);
    r["sd"] = Number(s.sd);
    r["min"] = Number(s.min);
    r["max"] = Number(s.max);
    rows.push_back(std::move(r));
  }
  return rows;
}

Json ToJson(const ProbabilityGrid& g) {
  Json j;
  Json xt = Json::array();
  for (const double v : g.x_ticks) xt.push_back(Number(v));
  Json zt = Json::array();
  for (const double v : g.z_ticks) zt.push_back(Number(v));
  j["x_ticks"] = std::move(xt);
  j["z_ticks"] = std::move(zt);
  j["k"] = g.k;
  j["standardization"] = {{"mean_x", Number(g.scale.mean_x)},
                          {"sd_x", Number(g.scale.sd_x)},
                          {"mean_z", Number(g.scale.mean_z)},
                          {"sd_z", Number(g.scale.sd_z)}};
  Json rows = Json::array();
  for (std::size_t ix = 0; ix < g.x_ticks.size(); ++ix) {
    Json row = Json::array();
    for (std::size_t iz = 0; iz < g.z_ticks.size(); ++iz) {
      row.push_back(Number(g.at(ix, iz)));
    }
    rows.push_back(std::move(row));
  }
  j["prob"] = std::move(rows);
  return j;
}

Json ToJson(const BoundaryPolyline& polyline) {
  Json segs = Json::array();
  for (const auto& s : polyline.segments) {
    segs.push_back({Number(s.a.x), Number(s.a.z), Number(s.b.x), Number(s.b.z)});
  }
  return segs;
}

void WriteCurveCsv(std::ostream& out, std::span<const std::string> vars,
                   std::span<const CurvePoint> curve) {
  for (const auto& v : vars) out << "c_" << v << ',';
  out << "total_welfare,avg_welfare,n_treated,share_treated,feasible\n";
  for (const auto& p : curve) {
    for (const double c : p.c) out << FormatNumber(c) << ',';
    out << FormatNumber(p.report.total_welfare) << ','
        << (p.report.avg_welfare ? FormatNumber(*p.report.avg_welfare) : "")
        << ',' << p.report.n_treated << ','
        << FormatNumber(p.report.share_treated) << ','
        << (p.feasible ? 1 : 0) << '\n';
  }
}

std::string Dump(const Json& json) { return json.dump(2) + "\n"; }

void WriteTextFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::kIo, "failed writing " + path.string());
}

std::string ReadTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace polopt
