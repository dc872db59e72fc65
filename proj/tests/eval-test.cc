// satadapt/tests/eval-test.cc

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

#include <cmath>

#include "doctest.h"
#include "satadapt/error.h"
#include "satadapt/losses.h"
#include "satadapt/eval.h"
#include "satadapt/synthdata.h"
#include "test-util.h"

namespace satadapt {
namespace {

using testing::RandomMatrix;
using testing::TempDir;

double Round1(double v) { return std::round(v * 10.0) / 10.0; }
double Round2(double v) { return std::round(v * 100.0) / 100.0; }

MetricsReport SampleReport() {
  MetricsReport r;
  r.fingerprint = Fingerprint("config text");
  r.seed = 7;
  r.notes = {{"k", "10"}};
  r.Add("senone_err.adult.test", 13.25);
  r.Add("reduction.sat_vs_bat.relative", 1.0 / 3.0);
  return r;
}

}  // namespace

TEST_CASE("senone error counts mismatches") {
  std::vector<std::size_t> pred = {0, 1, 2, 3};
  std::vector<int> truth = {0, 1, 2, 3};
  CHECK(SenoneErrorRate(pred, truth) == 0.0);
  std::vector<int> three_wrong = {0, 0, 0, 0};
  CHECK(SenoneErrorRate(pred, three_wrong) == 75.0);
  CHECK_THROWS_AS(SenoneErrorRate({}, {}), ConfigError);
  std::vector<int> short_truth = {0};
  CHECK_THROWS_AS(SenoneErrorRate(pred, short_truth), ShapeError);
}

TEST_CASE("random guessing over ten senones errs about ninety percent") {
  Rng rng(3);
  std::vector<std::size_t> pred(10000);
  std::vector<int> truth(10000);
  for (std::size_t i = 0; i < pred.size(); ++i) {
    pred[i] = rng.UniformInt(10);
    truth[i] = static_cast<int>(rng.UniformInt(10));
  }
  // Binomial sd is 0.3 points.
  CHECK(std::abs(SenoneErrorRate(pred, truth) - 90.0) <= 1.5);
}

TEST_CASE("reductions round to the reference figures") {
  CHECK(Round1(RelativeReduction(67.19, 62.02)) == 7.7);
  CHECK(Round2(AbsoluteReduction(74.43, 62.02)) == 12.41);
  CHECK(Round2(AbsoluteReduction(85.11, 69.56)) == 15.55);
  const double r = RelativeReduction(1.90, 1.42);
  CHECK(Round2(r) == 25.26);
  CHECK(std::abs(r - 25.2) <= 0.1);
  CHECK(RelativeReduction(4.0, 4.0) == 0.0);
  CHECK(AbsoluteReduction(4.0, 4.0) == 0.0);
  CHECK_THROWS_AS(RelativeReduction(0.0, 1.0), ConfigError);
}

TEST_CASE("zero-weight discriminator scores the majority fraction") {
  Rng rng(4);
  DomainDiscriminator disc(DiscriminatorMode::kBinary, 3, {4}, 2, &rng);
  for (auto &e : disc.params().entries()) e.value.SetZero();
  AdaptationNetwork adapter(3, {2}, &rng);
  EvalSet set;
  set.frames = RandomMatrix(10, 3, &rng);
  set.domain = {0, 0, 0, 0, 0, 0, 0, 1, 1, 1};
  set.senone_labels.assign(10, 0);
  DomainConfusion dc = MeasureDomainConfusion(disc, adapter, set);
  CHECK(dc.accuracy == doctest::Approx(70.0));
  CHECK(dc.mean_confidence == doctest::Approx(0.5));
  set.domain.assign(10, kChild);
  CHECK_THROWS_AS(MeasureDomainConfusion(disc, adapter, set), ConfigError);
}

TEST_CASE("level scoring") {
  std::vector<int> truth = {1, 2, 3, 4, 5};
  std::vector<double> perfect = {1, 2, 3, 4, 5};
  HeadMetrics m = ScoreLevels(perfect, truth);
  CHECK(m.accuracy == 100.0);
  CHECK(m.mse == 0.0);
  std::vector<double> threes(5, 3.0);
  m = ScoreLevels(threes, truth);
  CHECK(m.mse == doctest::Approx(2.0));
  CHECK(m.accuracy == doctest::Approx(20.0));
  CHECK_THROWS_AS(ScoreLevels({}, {}), ConfigError);
}

TEST_CASE("assessment training beats chance on the synthetic corpus") {
  AssessmentCorpus all = GenerateAssessmentCorpus(1000, 5);
  AssessmentCorpus train = all.Slice(0, 800), test = all.Slice(800, 1000);
  Rng rng(5);
  AssessmentNetwork net(kAssessInputDim, {32}, kAssessLevels, &rng);
  AssessmentTrainConfig cfg;
  cfg.epochs = 20;
  std::vector<double> losses = TrainAssessment(&net, train, cfg);
  CHECK(losses.size() == 20);
  CHECK(losses.back() < losses.front());
  AssessmentMetrics m = EvaluateAssessment(net, test);
  CHECK(m.pronunciation.accuracy > 40.0);
  CHECK(m.fluency.accuracy > 40.0);
  AssessmentMetrics e = EvaluateAssessment(net, test, LevelDecoding::kExpected);
  CHECK(e.pronunciation.accuracy == m.pronunciation.accuracy);
  CHECK_THROWS_AS(EvaluateAssessment(net, AssessmentCorpus()), ConfigError);
}

TEST_CASE("reports round-trip and reject malformed text") {
  MetricsReport r = SampleReport();
  const std::string text = FormatReport(r);
  CHECK(text.rfind("# fingerprint ", 0) == 0);
  CHECK(ParseReport(text) == r);
  TempDir dir("eval");
  WriteReport(r, dir.File("r.tsv"));
  CHECK(ReadReport(dir.File("r.tsv")) == r);

  CHECK_THROWS_AS(ParseReport("senone_err.adult.test\t1\n"), FormatError);
  CHECK_THROWS_AS(ParseReport("# fingerprint 00\n# seed 1\nname 1\n"), FormatError);
  CHECK_THROWS_AS(ParseReport("# fingerprint 00\n# seed 1\nname\tabc\n"), FormatError);
  CHECK_THROWS_AS(r.Add("x", std::nan("")), NonFiniteError);
  CHECK(r.Find("senone_err.adult.test") != nullptr);
  CHECK(r.Find("nope") == nullptr);
}

TEST_CASE("fingerprint is FNV-1a") {
  CHECK(Fingerprint("") == "cbf29ce484222325");
  CHECK(Fingerprint("a") == "af63dc4c8601ec8c");
}

TEST_CASE("metric registry") {
  const auto full = RegisteredMetricNames(true, true);
  CHECK(full.size() == 2 + 6 + 6 + 2 + 5);
  CHECK(full.front() == "senone_err.adult.test");
  CHECK(std::find(full.begin(), full.end(), "reduction.sat_vs_bat.relative") != full.end());
  const auto bat_only = RegisteredMetricNames(true, false);
  CHECK(std::find(bat_only.begin(), bat_only.end(), "disc_acc.sat.test") == bat_only.end());
  CHECK(PerSenoneCsv({"dnn"}, {{1.0, 2.5}}) == "senone,dnn\n0,1.000000\n1,2.500000\n");
}

}  // namespace satadapt
