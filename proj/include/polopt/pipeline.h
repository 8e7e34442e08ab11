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

// End-to-end policy assignment protocol:
//
//   estimate  tau(X) by regression adjustment, ATE by DIM and RA
//   welfare   W of the program's own assignment, W*, regret
//   search    optimal thresholds for each configured variable group
//   menu      scenario menu with one variable held at a threshold
//   boundary  kNN decision boundary for T* in two selection variables
//   all       every step above that the config asks for
//
// Every command writes JSON (plus CSV sidecars for curves) into the output
// directory and a manifest.json recording the config, the input checksum and
// per-step wall-clock times.

#ifndef POLOPT_PIPELINE_H_
#define POLOPT_PIPELINE_H_

#include <chrono>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "polopt/cate.h"
#include "polopt/config.h"
#include "polopt/dataset.h"
#include "polopt/error.h"
#include "polopt/serialize.h"
#include "polopt/threshold.h"

namespace polopt {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 2;
inline constexpr int kExitModelError = 3;
inline constexpr int kExitInfeasible = 4;

int ExitCodeFor(const Error& error);

class Pipeline {
 public:
  Pipeline(RunConfig config, std::ostream& out, std::ostream& err);

  // Runs one command and returns the process exit code. Errors are reported
  // on the error stream, never thrown.
  int Run(std::string_view command);

  const RunConfig& config() const { return config_; }

 private:
  int Dispatch(std::string_view command);
  void Estimate();
  void Welfare();
  // Returns false if any search had no feasible point.
  bool Search();
  bool Menu();
  void Boundary();

  const PolicyDataset& Data();
  const std::vector<double>& Tau();
  const AssignmentVector& Screen();
  double Alpha();
  ThresholdSearchResult RunSearch(const std::vector<std::string>& vars);

  // Prefixes schema_version and kind, then writes `body`'s fields.
  void WriteJson(const std::string& name, const std::string& kind,
                 const Json& body);
  void WriteOutput(const std::string& name, const std::string& text);
  void WriteManifest(std::string_view command);

  template <typename F>
  auto Timed(const std::string& step, F&& f) {
    const auto start = std::chrono::steady_clock::now();
    struct Record {
      Pipeline* self;
      std::string step;
      std::chrono::steady_clock::time_point start;
      ~Record() {
        self->timings_.emplace_back(
            step, std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - start)
                      .count());
      }
    } record{this, step, start};
    return f();
  }

  RunConfig config_;
  std::ostream& out_;
  std::ostream& err_;
  std::optional<PolicyDataset> data_;
  std::optional<CateEstimates> cate_;
  std::optional<std::vector<double>> tau_;
  std::optional<AssignmentVector> screen_;
  std::vector<std::string> outputs_;
  std::vector<std::pair<std::string, double>> timings_;
};

// Recomputes the input checksum recorded in `manifest_path`. Returns true
// when it still matches; `message` explains a mismatch.
bool VerifyManifest(const std::filesystem::path& manifest_path,
                    std::string* message);

// File-name stem for a variable group: "age" or "age_re75".
std::string GroupStem(const std::vector<std::string>& vars);

}  // namespace polopt

#endif  // POLOPT_PIPELINE_H_
