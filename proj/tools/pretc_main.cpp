// Copyright 2026 The pretc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "pretc/csv.hpp"
#include "pretc/scenario.hpp"
#include "pretc/sweep.hpp"

namespace fs = std::filesystem;

namespace {

// Output directory priority: PRETC_OUT_DIR env var, then --out-dir, then the
// configured value.
std::string resolve_out_dir(const std::string& cli_value,
                            const std::string& config_value) {
  if (const char* env = std::getenv("PRETC_OUT_DIR"); env != nullptr && *env) {
    return env;
  }
  if (!cli_value.empty()) return cli_value;
  return config_value;
}

void apply_profile(pretc::ScenarioConfig& cfg, const std::string& profile) {
  cfg.profile = pretc::parse_profile(profile);
  if (cfg.profile == pretc::Profile::kExperiment) {
    cfg.ctrl_ts_s = 0.025;
    cfg.ctrl_n_steps = 10;
  } else {
    cfg.ctrl_ts_s = 0.005;
    cfg.ctrl_n_steps = 50;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Preview-based traction control simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string mode_override;
  std::string profile_override;
  std::string out_dir_override;
  std::string tau_list;
  std::string delay_list;
  bool serial = false;

  CLI::App* run = app.add_subcommand("run", "Run one closed-loop scenario");
  run->add_option("--config", config_path, "Scenario config file")->required();
  run->add_option("--mode", mode_override,
                  "Override controller mode: passive|nmpc|pre-nmpc");
  run->add_option("--profile", profile_override,
                  "Override timing preset: experiment|simulation");
  run->add_option("--out-dir", out_dir_override, "Output directory");

  CLI::App* sweep =
      app.add_subcommand("sweep", "Run the tau x delay sensitivity sweep");
  sweep->add_option("--config", config_path, "Scenario config file")->required();
  sweep->add_option("--tau-ms", tau_list,
                    "Comma-separated powertrain time constants [ms]");
  sweep->add_option("--delay-ms", delay_list,
                    "Comma-separated pure delays [ms]");
  sweep->add_option("--profile", profile_override,
                    "Override timing preset: experiment|simulation");
  sweep->add_option("--out-dir", out_dir_override, "Output directory");
  sweep->add_flag("--serial", serial, "Run sweep cells sequentially");

  std::string init_path;
  CLI::App* init = app.add_subcommand(
      "init-config", "Write a config file with every default value");
  init->add_option("path", init_path, "Destination file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (init->parsed()) {
      pretc::ScenarioConfig defaults;
      defaults.save(init_path);
      std::printf("wrote %s\n", init_path.c_str());
      return 0;
    }

    pretc::ScenarioConfig cfg = pretc::ScenarioConfig::load(config_path);
    const std::string base_dir = fs::path(config_path).parent_path().string();
    if (!profile_override.empty()) apply_profile(cfg, profile_override);
    if (!mode_override.empty()) {
      cfg.mode = pretc::parse_controller_mode(mode_override);
    }
    const fs::path out_dir = resolve_out_dir(out_dir_override, cfg.out_dir);
    fs::create_directories(out_dir);
    cfg.save((out_dir / "resolved_config.cfg").string());

    if (run->parsed()) {
      pretc::TimeSeries series;
      try {
        series = pretc::run_scenario(cfg, base_dir);
      } catch (const pretc::ScenarioError& e) {
        pretc::write_series_csv(e.partial_series,
                                (out_dir / "series.csv").string());
        std::fprintf(stderr, "error: %s (partial log flushed)\n", e.what());
        return 1;
      }
      pretc::write_series_csv(series, (out_dir / "series.csv").string());
      const std::vector<pretc::MetricsRow> rows = {pretc::metrics(series)};
      pretc::write_metrics_csv(rows, (out_dir / "metrics.csv").string());
      std::printf("wrote %s and metrics.csv (peak sigma_fr %.4g, rmse %.4g)\n",
                  (out_dir / "series.csv").string().c_str(),
                  rows[0].peak_sigma_fr, rows[0].rmse_sigma_fr);
      return 0;
    }

    // sweep
    auto parse_ms_list = [](const std::string& raw) {
      std::vector<double> out;
      std::string item;
      std::istringstream in(raw);
      while (std::getline(in, item, ',')) {
        if (!item.empty()) out.push_back(std::stod(item) * 1e-3);
      }
      return out;
    };
    if (!tau_list.empty()) cfg.sweep_tau_s = parse_ms_list(tau_list);
    if (!delay_list.empty()) cfg.sweep_delay_s = parse_ms_list(delay_list);

    const pretc::SweepResult result =
        pretc::run_sweep(cfg, base_dir, !serial);
    pretc::write_metrics_csv(result.rows, (out_dir / "metrics.csv").string());
    std::printf("wrote %s (%zu rows)\n",
                (out_dir / "metrics.csv").string().c_str(),
                result.rows.size());
    for (const std::string& f : result.failures) {
      std::fprintf(stderr, "cell failed: %s\n", f.c_str());
    }
    return result.failures.empty() ? 0 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
