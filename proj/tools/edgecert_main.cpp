// Copyright 2026 The edgecert Authors.
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

#include <cstdio>
#include <exception>
#include <functional>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "edgecert/errors.hpp"
#include "runner/config.hpp"
#include "runner/pipeline.hpp"

namespace {

using edgecert::runner::ExperimentConfig;

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
};

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--config", o.config, "Experiment config file")->required()->check(CLI::ExistingFile);
  sub->add_option("--seed", o.seed, "Override the root seed");
  sub->add_option("--out", o.out, "Override the output directory");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified edge-addition robustness for graph contrastive encoders"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(EDGECERT_VERSION));

  Options opts;
  const std::map<std::string, std::pair<std::string, std::function<void(const ExperimentConfig&)>>> commands{
      {"gen", {"Write the SBM fixture and its manifest", edgecert::runner::cmd_gen}},
      {"train", {"Train the encoder and linear classifier", edgecert::runner::cmd_train}},
      {"certify", {"Certify the test split and write the curve", edgecert::runner::cmd_certify}},
      {"attack", {"Random evasion attack on base and smoothed pipelines", edgecert::runner::cmd_attack}},
      {"report", {"Consolidate outputs into report.json", edgecert::runner::cmd_report}},
  };
  for (const auto& [name, entry] : commands) add_common(app.add_subcommand(name, entry.first), opts);

  CLI11_PARSE(app, argc, argv);

  try {
    ExperimentConfig cfg = edgecert::runner::load_config(opts.config);
    if (opts.seed) cfg.seed = *opts.seed;
    if (opts.out) cfg.out = *opts.out;
    for (const auto& [name, entry] : commands) {
      if (app.got_subcommand(name)) entry.second(cfg);
    }
  } catch (const edgecert::Error& e) {
    std::fprintf(stderr, "edgecert: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "edgecert: unexpected error: %s\n", e.what());
    return 2;
  }
  return 0;
}
