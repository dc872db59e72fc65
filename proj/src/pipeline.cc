// satadapt/src/pipeline.cc

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

#include "satadapt/pipeline.h"

#include <filesystem>

#include "satadapt/param-io.h"
#include "satadapt/synthdata.h"

namespace satadapt {

namespace fs = std::filesystem;

namespace {

constexpr const char *kCodeVersion = "satadapt-1";

std::string PathIn(const std::string &dir, const std::string &name) {
  return (fs::path(dir) / name).string();
}

void EnsureDir(const std::string &dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir + ": " + ec.message());
}

void WriteResolved(const RunConfig &cfg, const std::string &dir, const std::string &stage) {
  WriteFileBytes(PathIn(dir, stage + ".config"), cfg.Resolved());
}

void CheckMode(const std::string &mode) {
  if (mode != "bat" && mode != "sat")
    throw ConfigError("mode must be 'bat' or 'sat', got '" + mode + "'");
}

std::uint64_t StageSeed(const RunConfig &cfg, std::uint64_t tag) {
  return MixSeed(cfg.GetU64("seed") * 0x100000001b3ULL + tag);
}

SyntheticCorpus RequireCorpus(const std::string &dir) {
  const std::string path = PathIn(dir, kCorpusFile);
  if (!fs::exists(path))
    throw PipelineError(kExitCorpusMissing, "corpus not found at " + path + " (run gen first)");
  return LoadCorpus(path);
}

AdultAcousticModel RequireFrozenAm(const std::string &dir, int missing_code) {
  const std::string path = PathIn(dir, kAmFile);
  if (!fs::exists(path))
    throw PipelineError(missing_code, "acoustic model bundle not found at " + path);
  AdultAcousticModel am = LoadAdultAm(path);
  if (!am.frozen())
    throw PipelineError(kExitUnfrozenAm, "acoustic model bundle " + path + " is not frozen");
  return am;
}

}  // namespace

int ExitCodeFor(const std::exception &e) {
  if (auto *p = dynamic_cast<const PipelineError *>(&e)) return p->exit_code();
  if (dynamic_cast<const ConfigError *>(&e)) return kExitConfig;
  if (dynamic_cast<const FrozenError *>(&e)) return kExitUnfrozenAm;
  if (dynamic_cast<const IoError *>(&e) || dynamic_cast<const FormatError *>(&e))
    return kExitIo;
  return kExitFailure;
}

std::string AdapterFile(const std::string &mode) { return "adapter_" + mode + ".bundle"; }
std::string DiscriminatorFile(const std::string &mode) { return "disc_" + mode + ".bundle"; }
std::string AdaptLogFile(const std::string &mode) { return "adapt_" + mode + ".log"; }

AdultAcousticModel NewAcousticModel(const RunConfig &cfg, std::size_t dim, std::size_t k) {
  Rng rng(StageSeed(cfg, 11));
  return BuildAdultAm(dim, cfg.GetDims("am_hidden"), k, &rng);
}

AdaptationNetwork NewAdapter(const RunConfig &cfg, std::size_t dim) {
  Rng rng(StageSeed(cfg, 23));
  return AdaptationNetwork(dim, cfg.GetDims("adapter_hidden"), &rng);
}

DomainDiscriminator NewDiscriminator(const RunConfig &cfg, DiscriminatorMode mode,
                                     std::size_t dim, std::size_t k) {
  Rng rng(StageSeed(cfg, mode == DiscriminatorMode::kBinary ? 31 : 37));
  return DomainDiscriminator(mode, dim, cfg.GetDims("disc_hidden"), k, &rng);
}

DomainDiscriminator TrainReferenceDiscriminator(const RunConfig &cfg,
                                                AdultAcousticModel *am,
                                                const TrainingView &data,
                                                const std::string &mode) {
  AdversarialConfig acfg = cfg.Adversarial(mode);
  acfg.update_adapter = false;
  AdaptationNetwork identity = NewAdapter(cfg, data.frames.NumCols());
  DomainDiscriminator disc =
      NewDiscriminator(cfg, acfg.mode, data.frames.NumCols(), data.num_senones);
  AdversarialTrain(&identity, am, &disc, data, acfg);
  return disc;
}

void RunGen(const RunConfig &cfg, const std::string &out_dir) {
  const GeneratorConfig g = cfg.Generator();
  EnsureDir(out_dir);
  SaveCorpus(GenerateCorpus(g), PathIn(out_dir, kCorpusFile));
  SaveAssessmentCorpus(GenerateAssessmentCorpus(cfg.GetU64("assess_n"), g.seed),
                       PathIn(out_dir, kAssessFile));
  WriteResolved(cfg, out_dir, "gen");
}

void RunPretrain(const RunConfig &cfg, const std::string &out_dir) {
  const PretrainConfig pcfg = cfg.Pretrain();
  const SyntheticCorpus corpus = RequireCorpus(out_dir);
  AdultAcousticModel am = NewAcousticModel(cfg, corpus.frames.NumCols(), corpus.num_senones);
  const TrainLog log = PretrainAdultAm(&am, corpus.TrainView(), pcfg);
  SaveAdultAm(am, PathIn(out_dir, kAmFile));

  // Dev accuracy goes into the log so chance-level (untrained) models are
  // visible without a separate eval run.
  AdaptationNetwork unused(corpus.frames.NumCols(), {1}, nullptr);
  const double dev_err =
      AdaptedSenoneError(unused, am, corpus.Select(Split::kDev, kAdult), false);
  std::string text = log.ToText();
  char buf[64];
  std::snprintf(buf, sizeof(buf), "# dev_senone_acc %.17g\n", 1.0 - dev_err / 100.0);
  text += buf;
  WriteFileBytes(PathIn(out_dir, "pretrain.log"), text);
  WriteResolved(cfg, out_dir, "pretrain");
}

void RunAdapt(const RunConfig &cfg, const std::string &mode, const std::string &out_dir) {
  CheckMode(mode);
  const AdversarialConfig acfg = cfg.Adversarial(mode);
  const SyntheticCorpus corpus = RequireCorpus(out_dir);
  AdultAcousticModel am = RequireFrozenAm(out_dir, kExitBundleMissing);
  const std::size_t dim = corpus.frames.NumCols();
  AdaptationNetwork adapter = NewAdapter(cfg, dim);
  DomainDiscriminator disc = NewDiscriminator(cfg, acfg.mode, dim, corpus.num_senones);
  const TrainLog log = AdversarialTrain(&adapter, &am, &disc, corpus.TrainView(), acfg);
  SaveAdapter(adapter, PathIn(out_dir, AdapterFile(mode)));
  SaveDiscriminator(disc, PathIn(out_dir, DiscriminatorFile(mode)));
  WriteFileBytes(PathIn(out_dir, AdaptLogFile(mode)), log.ToText());
  WriteResolved(cfg, out_dir, "adapt_" + mode);
}

MetricsReport RunEval(const RunConfig &cfg, const std::string &out_dir) {
  const AssessmentTrainConfig assess_cfg = cfg.Assessment();
  const LevelDecoding decoding = cfg.MseDecoding();
  AdultAcousticModel am = RequireFrozenAm(out_dir, kExitBundleMissing);
  const SyntheticCorpus corpus = RequireCorpus(out_dir);
  const std::string assess_path = PathIn(out_dir, kAssessFile);
  if (!fs::exists(assess_path))
    throw PipelineError(kExitCorpusMissing, "assessment corpus not found at " + assess_path);
  const AssessmentCorpus assess = LoadAssessmentCorpus(assess_path);

  const EvalSet child_test = corpus.Select(Split::kTest, kChild);
  const EvalSet adult_test = corpus.Select(Split::kTest, kAdult);
  const EvalSet both_test = corpus.Select(Split::kTest);
  const std::size_t dim = corpus.frames.NumCols();
  const AdaptationNetwork identity(dim, {1}, nullptr);

  MetricsReport report;
  report.seed = cfg.GetU64("seed");
  report.fingerprint = Fingerprint(cfg.Resolved() + kCodeVersion);
  report.notes.emplace_back("senone_error", "frame_level_percent");
  report.notes.emplace_back("mse_decoding", cfg.Get("mse_decoding"));
  report.notes.emplace_back("mse_scale", "integer_levels_1_to_5");

  const double dnn = AdaptedSenoneError(identity, am, child_test, false);
  report.Add("senone_err.adult.test", AdaptedSenoneError(identity, am, adult_test, false));
  report.Add("senone_err.dnn.child.test", dnn);

  std::vector<std::string> arms = {"dnn"};
  std::vector<std::vector<double>> per_senone = {
      PerSenoneError(identity, am, child_test, false)};
  std::map<std::string, double> arm_error;
  for (const std::string mode : {"bat", "sat"}) {
    const std::string adapter_path = PathIn(out_dir, AdapterFile(mode));
    const std::string disc_path = PathIn(out_dir, DiscriminatorFile(mode));
    if (!fs::exists(adapter_path) || !fs::exists(disc_path)) continue;
    const AdaptationNetwork adapter = LoadAdapter(adapter_path);
    const DomainDiscriminator disc = LoadDiscriminator(disc_path);
    const double err = AdaptedSenoneError(adapter, am, child_test, true);
    arm_error[mode] = err;
    report.Add("senone_err." + mode + ".child.test", err);
    report.Add("senone_err." + mode + ".adult.test",
               AdaptedSenoneError(adapter, am, adult_test, true));
    const DomainConfusion dc = MeasureDomainConfusion(disc, adapter, both_test);
    report.Add("disc_acc." + mode + ".test", dc.accuracy);
    report.Add("disc_conf." + mode + ".test", dc.mean_confidence);
    report.Add("reduction." + mode + "_vs_dnn.absolute", AbsoluteReduction(dnn, err));
    report.Add("reduction." + mode + "_vs_dnn.relative", RelativeReduction(dnn, err));
    arms.push_back(mode);
    per_senone.push_back(PerSenoneError(adapter, am, child_test, true));
  }
  if (arm_error.contains("bat") && arm_error.contains("sat")) {
    report.Add("reduction.sat_vs_bat.absolute",
               AbsoluteReduction(arm_error["bat"], arm_error["sat"]));
    report.Add("reduction.sat_vs_bat.relative",
               RelativeReduction(arm_error["bat"], arm_error["sat"]));
  }

  // Assessment: first 80% trains, the rest is scored.
  const std::size_t cut = assess.Size() * 4 / 5;
  const AssessmentCorpus assess_train = assess.Slice(0, cut);
  const AssessmentCorpus assess_test = assess.Slice(cut, assess.Size());
  Rng init(StageSeed(cfg, 41));
  AssessmentNetwork net(assess.features.NumCols(), kAssessTrunk, kAssessLevels, &init);
  TrainAssessment(&net, assess_train, assess_cfg);
  const AssessmentMetrics am_metrics = EvaluateAssessment(net, assess_test, decoding);
  report.Add("assess.pron.accuracy", am_metrics.pronunciation.accuracy);
  report.Add("assess.pron.mse", am_metrics.pronunciation.mse);
  report.Add("assess.flu.accuracy", am_metrics.fluency.accuracy);
  report.Add("assess.flu.mse", am_metrics.fluency.mse);
  const std::vector<double> constant3(assess_test.Size(), 3.0);
  report.Add("assess.constant3.mse", ScoreLevels(constant3, assess_test.pronunciation).mse);

  WriteReport(report, PathIn(out_dir, kReportFile));
  WriteFileBytes(PathIn(out_dir, kPerSenoneFile), PerSenoneCsv(arms, per_senone));
  WriteResolved(cfg, out_dir, "eval");
  return report;
}

ArmComparison CompareArms(const RunConfig &cfg) {
  const SyntheticCorpus corpus = GenerateCorpus(cfg.Generator());
  const TrainingView train = corpus.TrainView();
  const std::size_t dim = corpus.frames.NumCols(), k = corpus.num_senones;
  AdultAcousticModel am = NewAcousticModel(cfg, dim, k);
  PretrainAdultAm(&am, train, cfg.Pretrain());

  const EvalSet child_test = corpus.Select(Split::kTest, kChild);
  const EvalSet both_test = corpus.Select(Split::kTest);
  const AdaptationNetwork identity(dim, {1}, nullptr);
  ArmComparison out;
  out.dnn_child_error = AdaptedSenoneError(identity, am, child_test, false);
  out.adult_error = AdaptedSenoneError(identity, am, corpus.Select(Split::kTest, kAdult), false);
  for (const std::string mode : {"bat", "sat"}) {
    const AdversarialConfig acfg = cfg.Adversarial(mode);
    AdaptationNetwork adapter = NewAdapter(cfg, dim);
    DomainDiscriminator disc = NewDiscriminator(cfg, acfg.mode, dim, k);
    AdversarialTrain(&adapter, &am, &disc, train, acfg);
    const double err = AdaptedSenoneError(adapter, am, child_test, true);
    const double acc = MeasureDomainConfusion(disc, adapter, both_test).accuracy;
    const DomainDiscriminator ref = TrainReferenceDiscriminator(cfg, &am, train, mode);
    const double ref_acc = MeasureDomainConfusion(ref, identity, both_test).accuracy;
    if (mode == "bat") {
      out.bat_child_error = err;
      out.bat_disc_accuracy = acc;
      out.reference_disc_accuracy_bat = ref_acc;
    } else {
      out.sat_child_error = err;
      out.sat_disc_accuracy = acc;
      out.reference_disc_accuracy_sat = ref_acc;
    }
  }
  return out;
}

}  // namespace satadapt
