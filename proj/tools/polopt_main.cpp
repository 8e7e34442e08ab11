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

// polopt: command-line front end for the policy assignment pipeline.
//
//   polopt <estimate|welfare|search|menu|boundary|all> --config FILE [flags]
//   polopt verify OUT_DIR/manifest.json
//
// Flags override the config file.

#include <cstdlib>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "polopt/config.h"
#include "polopt/kernels.h"
#include "polopt/pipeline.h"

namespace {

struct Flags {
  std::string config;
  std::map<std::string, std::string> values;
  bool no_star_screen = false;
};

void AddFlag(CLI::App& app, Flags& flags, const std::string& name,
             const std::string& key, const std::string& help) {
  app.add_option_function<std::string>(
      name, [&flags, key](const std::string& v) { flags.values[key] = v; },
      help);
}

void AddRunFlags(CLI::App& app, Flags& flags) {
  app.add_option("-c,--config", flags.config, "Config file (key = value)");
  AddFlag(app, flags, "--data", "data", "Input CSV file");
  AddFlag(app, flags, "-o,--out", "output", "Output directory");
  AddFlag(app, flags, "--outcome", "outcome", "Outcome column");
  AddFlag(app, flags, "--treatment", "treatment", "Treatment column (0/1)");
  AddFlag(app, flags, "--objective", "objective", "avg or total");
  AddFlag(app, flags, "--grid", "grid", "observed or quantile:K");
  AddFlag(app, flags, "--min-share", "min_share", "Lower bound on treated share");
  AddFlag(app, flags, "--max-share", "max_share", "Upper bound on treated share");
  AddFlag(app, flags, "--max-treated", "max_treated", "Upper bound on treated count");
  app.add_flag("--no-star-screen", flags.no_star_screen,
               "Evaluate 1[x >= c] without the T* screen");
  app.add_option_function<std::string>(
      "--vars",
      [&flags](const std::string& v) {
        std::string group = v;
        int count = 1;
        for (char& ch : group) {
          if (ch == ',') {
            ch = ':';
            ++count;
          }
        }
        flags.values["search"] = group;
        if (count == 2) flags.values["boundary"] = group;
      },
      "Selection variables for search/boundary, e.g. age or age,re75");
  AddFlag(app, flags, "--fixed", "menu_fixed", "Menu: variable held fixed");
  AddFlag(app, flags, "--fixed-threshold", "menu_fixed_threshold",
          "Menu: threshold of the fixed variable");
  AddFlag(app, flags, "--varying", "menu_varying", "Menu: variable that sweeps");
  AddFlag(app, flags, "--terms", "terms", "Model terms, e.g. age,age^2,re75");
  AddFlag(app, flags, "--tau-col", "tau_column", "Read tau from this column");
  AddFlag(app, flags, "--bins", "hist_bins", "Histogram bins");
  AddFlag(app, flags, "--k", "boundary_k", "Boundary: neighbours (0 = sqrt(n))");
  AddFlag(app, flags, "--resolution", "boundary_resolution",
          "Boundary: grid nodes per axis");
  AddFlag(app, flags, "--alpha", "alpha", "Decomposition alpha: dim, ra or a number");
  AddFlag(app, flags, "--threads", "threads", "Kernel thread cap (0 = all)");
}

polopt::RunConfig BuildConfig(const Flags& flags) {
  polopt::RunConfig config;
  if (const char* env = std::getenv("POLOPT_THREADS")) {
    polopt::ApplyConfig({{"threads", env}}, config);
  }
  if (!flags.config.empty()) {
    const std::filesystem::path path(flags.config);
    polopt::ApplyConfig(polopt::ReadConfigFile(path), config,
                        path.parent_path());
  }
  polopt::ConfigMap overrides(flags.values.begin(), flags.values.end());
  if (flags.no_star_screen) overrides["star_screen"] = "false";
  polopt::ApplyConfig(overrides, config);
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Threshold-based policy assignment by empirical welfare maximization"};
  app.require_subcommand(1);
  app.set_version_flag("--version", POLOPT_VERSION);

  Flags flags;
  const char* kCommands[][2] = {
      {"estimate", "Estimate tau(X), DIM and RA average effects"},
      {"welfare", "Welfare of the actual assignment, W* and regret"},
      {"search", "Optimal thresholds for each selection variable group"},
      {"menu", "Scenario menu with one threshold held fixed"},
      {"boundary", "kNN decision boundary for T* in two variables"},
      {"all", "Run every configured step"},
  };
  for (const auto& [name, help] : kCommands) {
    AddRunFlags(*app.add_subcommand(name, help), flags);
  }
  std::string manifest;
  app.add_subcommand("verify", "Check the input checksum recorded in a manifest")
      ->add_option("manifest", manifest, "Path to manifest.json")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : polopt::kExitDataError;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  if (command == "verify") {
    std::string message;
    try {
      const bool ok = polopt::VerifyManifest(manifest, &message);
      (ok ? std::cout : std::cerr) << message << '\n';
      return ok ? polopt::kExitOk : polopt::kExitDataError;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return polopt::kExitDataError;
    }
  }

  try {
    polopt::Pipeline pipeline(BuildConfig(flags), std::cout, std::cerr);
    return pipeline.Run(command);
  } catch (const polopt::Error& e) {
    std::cerr << "error [" << polopt::ErrorCodeName(e.code()) << "]: "
              << e.what() << '\n';
    return polopt::ExitCodeFor(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
