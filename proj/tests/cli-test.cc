// satadapt/tests/cli-test.cc

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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>

#include "doctest.h"
#include "satadapt/eval.h"
#include "satadapt/models.h"
#include "satadapt/param-io.h"
#include "satadapt/pipeline.h"
#include "satadapt/synthdata.h"
#include "test-util.h"

namespace satadapt {
namespace {

namespace fs = std::filesystem;
using testing::TempDir;

constexpr const char *kSmallConfig =
    "n_adult=400\nn_child=400\nn_dev=200\nn_test=200\nassess_n=200\n"
    "am_hidden=16\nadapter_hidden=8\ndisc_hidden=8\n"
    "pretrain_epochs=3\nadv_epochs=2\nassess_epochs=2\n";

int Run(const std::string &args) {
  const std::string cmd = std::string(SAT_ADAPT_BIN) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

struct RunDir {
  RunDir() : dir("cli") { WriteFileBytes(dir.File("run.cfg"), kSmallConfig); }
  std::string Common() const {
    return "--config " + dir.File("run.cfg") + " --out " + dir.path();
  }
  TempDir dir;
};

}  // namespace

TEST_CASE("full pipeline writes loadable artifacts") {
  RunDir r;
  REQUIRE(Run("gen " + r.Common()) == 0);
  const std::string corpus = r.dir.File(kCorpusFile);
  CHECK(fs::exists(r.dir.File("gen.config")));
  const SyntheticCorpus c = LoadCorpus(corpus);
  CHECK(c.NumFrames() == 2 * (400 + 200 + 200));
  CHECK(fs::file_size(corpus) == CorpusFileSize(c.NumFrames(), 20));
  CHECK(LoadAssessmentCorpus(r.dir.File(kAssessFile)).Size() == 200);

  REQUIRE(Run("pretrain " + r.Common()) == 0);
  CHECK(LoadAdultAm(r.dir.File(kAmFile)).frozen());
  const std::string am_bytes = ReadFileBytes(r.dir.File(kAmFile));
  CHECK(ReadFileBytes(r.dir.File("pretrain.log")).find("# dev_senone_acc") != std::string::npos);

  REQUIRE(Run("adapt --mode bat " + r.Common()) == 0);
  REQUIRE(Run("adapt --mode sat " + r.Common()) == 0);
  CHECK(ReadFileBytes(r.dir.File(kAmFile)) == am_bytes);
  CHECK(LoadDiscriminator(r.dir.File(DiscriminatorFile("sat"))).mode() ==
        DiscriminatorMode::kSenoneAware);
  CHECK(fs::exists(r.dir.File(AdaptLogFile("bat"))));

  REQUIRE(Run("eval " + r.Common()) == 0);
  const MetricsReport report = ReadReport(r.dir.File(kReportFile));
  std::vector<std::string> names;
  for (const auto &[n, v] : report.metrics) names.push_back(n);
  CHECK(names == RegisteredMetricNames(true, true));
  CHECK(fs::exists(r.dir.File(kPerSenoneFile)));
}

TEST_CASE("stages are deterministic for a fixed seed") {
  RunDir a, b;
  for (RunDir *r : {&a, &b}) {
    REQUIRE(Run("gen --seed 3 " + r->Common()) == 0);
    REQUIRE(Run("pretrain --seed 3 " + r->Common()) == 0);
    REQUIRE(Run("adapt --mode sat --seed 3 " + r->Common()) == 0);
  }
  for (const std::string f : {kCorpusFile, kAssessFile, kAmFile}) {
    CHECK(ReadFileBytes(a.dir.File(f)) == ReadFileBytes(b.dir.File(f)));
  }
  CHECK(ReadFileBytes(a.dir.File(AdapterFile("sat"))) ==
        ReadFileBytes(b.dir.File(AdapterFile("sat"))));
}

TEST_CASE("exit codes") {
  RunDir r;
  CHECK(Run("") == kExitConfig);
  CHECK(Run("adapt " + r.Common()) == kExitConfig);
  CHECK(Run("adapt --mode gan " + r.Common()) == kExitConfig);
  CHECK(Run("gen --config " + r.dir.File("missing.cfg")) == kExitConfig);
  WriteFileBytes(r.dir.File("bad.cfg"), "frobnicate=1\n");
  CHECK(Run("gen --config " + r.dir.File("bad.cfg") + " --out " + r.dir.path()) == kExitConfig);

  CHECK(Run("pretrain " + r.Common()) == kExitCorpusMissing);
  CHECK(Run("adapt --mode bat " + r.Common()) == kExitCorpusMissing);
  REQUIRE(Run("gen " + r.Common()) == 0);
  CHECK(Run("adapt --mode bat " + r.Common()) == kExitBundleMissing);
  CHECK(Run("eval " + r.Common()) == kExitBundleMissing);

  // A bundle whose manifest says the model is still trainable.
  Rng rng(1);
  AdultAcousticModel warm = BuildAdultAm(20, {16}, 10, &rng);
  SaveAdultAm(warm, r.dir.File(kAmFile));
  CHECK(Run("adapt --mode bat " + r.Common()) == kExitUnfrozenAm);

  WriteFileBytes(r.dir.File(kCorpusFile), "SACOgarbage");
  CHECK(Run("pretrain " + r.Common()) == kExitIo);
}

}  // namespace satadapt
