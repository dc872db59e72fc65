// satadapt/tests/config-test.cc

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

#include "doctest.h"
#include "satadapt/config.h"
#include "satadapt/error.h"
#include "satadapt/param-io.h"
#include "test-util.h"

namespace satadapt {

TEST_CASE("defaults describe the desk corpus") {
  RunConfig cfg;
  GeneratorConfig g = cfg.Generator();
  CHECK(g.num_senones == 10);
  CHECK(g.dim == 20);
  CHECK(g.n_adult == 5000);
  CHECK(g.n_child == 5000);
  CHECK(g.shift_profile == DefaultShiftProfile(10, 1.0));
  CHECK(cfg.Adversarial("bat").mode == DiscriminatorMode::kBinary);
  CHECK(cfg.Adversarial("sat").mode == DiscriminatorMode::kSenoneAware);
  CHECK(cfg.MseDecoding() == LevelDecoding::kArgmax);
  CHECK(cfg.GetDims("am_hidden").size() == 2);
}

TEST_CASE("key=value parsing with comments and overrides") {
  RunConfig cfg = RunConfig::FromText(
      "# desk run\n"
      "seed = 9\n"
      "\n"
      "shift_profile = 0,1,2  # three senones\n"
      "num_senones=3\n"
      "update_scheme=alternating\n");
  CHECK(cfg.GetU64("seed") == 9);
  CHECK(cfg.Generator().shift_profile == std::vector<double>{0, 1, 2});
  CHECK(cfg.Adversarial("bat").update_scheme == UpdateScheme::kAlternating);
  CHECK(cfg.Resolved().find("seed=9\n") != std::string::npos);
}

TEST_CASE("configuration errors are reported") {
  CHECK_THROWS_AS(RunConfig::FromText("bogus=1\n"), ConfigError);
  CHECK_THROWS_AS(RunConfig::FromText("seed\n"), ConfigError);
  CHECK_THROWS_AS(RunConfig::FromText("seed=\n"), ConfigError);
  CHECK_THROWS_AS(RunConfig::FromText("seed=-3\n").GetU64("seed"), ConfigError);
  CHECK_THROWS_AS(RunConfig::FromText("lr_adapter=fast\n").Adversarial("bat"), ConfigError);
  CHECK_THROWS_AS(RunConfig::FromText("lr_adapter=0\n").Adversarial("bat"), ConfigError);
  CHECK_THROWS_AS(RunConfig().Adversarial("gan"), ConfigError);
  CHECK_THROWS_AS(RunConfig::FromText("shift_profile=1,2\n").Generator(), ConfigError);
  CHECK_THROWS_AS(RunConfig::FromText("mse_decoding=mean\n").MseDecoding(), ConfigError);
  CHECK_THROWS_AS(RunConfig::FromFile("/nonexistent/run.cfg"), ConfigError);
}

TEST_CASE("generator files use the same syntax") {
  GeneratorConfig g = GeneratorConfigFromText("dim=8\nn_adult=100\nn_child=100\n");
  CHECK(g.dim == 8);
  CHECK(g.n_adult == 100);
  testing::TempDir dir("config");
  WriteFileBytes(dir.File("run.cfg"), "seed=4\n");
  CHECK(RunConfig::FromFile(dir.File("run.cfg")).GetU64("seed") == 4);
}

}  // namespace satadapt
