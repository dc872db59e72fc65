// satadapt/tools/sat-adapt.cc

// Copyright 2026  The satadapt Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

// Command-line driver: gen -> pretrain -> adapt (bat|sat) -> eval.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "satadapt/config.h"
#include "satadapt/pipeline.h"

int main(int argc, char *argv[]) {
  using namespace satadapt;

  CLI::App app{"Senone-aware adversarial feature adaptation on synthetic corpora"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::string mode;

  auto add_common = [&](CLI::App *sub) {
    sub->add_option("--config", config_path, "key=value run configuration");
    sub->add_option("--seed", seed, "overrides the config seed");
    sub->add_option("--out", out_dir, "run directory")->capture_default_str();
  };
  CLI::App *gen = app.add_subcommand("gen", "generate the synthetic corpora");
  CLI::App *pretrain = app.add_subcommand("pretrain", "train and freeze the adult acoustic model");
  CLI::App *adapt = app.add_subcommand("adapt", "adversarial adapter training");
  CLI::App *eval = app.add_subcommand("eval", "write the metrics report");
  for (CLI::App *sub : {gen, pretrain, adapt, eval}) add_common(sub);
  adapt->add_option("--mode", mode, "bat or sat")
      ->required()
      ->check(CLI::IsMember({"bat", "sat"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    RunConfig cfg = config_path.empty() ? RunConfig() : RunConfig::FromFile(config_path);
    if (seed) cfg.Set("seed", std::to_string(*seed));

    if (gen->parsed()) {
      RunGen(cfg, out_dir);
    } else if (pretrain->parsed()) {
      RunPretrain(cfg, out_dir);
    } else if (adapt->parsed()) {
      RunAdapt(cfg, mode, out_dir);
    } else if (eval->parsed()) {
      const MetricsReport report = RunEval(cfg, out_dir);
      std::cout << FormatReport(report);
    }
  } catch (const std::exception &e) {
    std::cerr << "sat-adapt: " << e.what() << "\n";
    return ExitCodeFor(e);
  }
  return kExitOk;
}
