// satadapt/satadapt/pipeline.h

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

#ifndef SATADAPT_PIPELINE_H_
#define SATADAPT_PIPELINE_H_

#include <string>

#include "satadapt/config.h"
#include "satadapt/error.h"
#include "satadapt/eval.h"
#include "satadapt/models.h"
#include "satadapt/training.h"

namespace satadapt {

/// Process exit codes of the command-line stages.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitConfig = 2,
  kExitIo = 3,
  kExitCorpusMissing = 4,
  kExitUnfrozenAm = 5,
  kExitBundleMissing = 6,
};

/// Error carrying the exit code a CLI stage should return.
class PipelineError : public Error {
 public:
  PipelineError(int exit_code, const std::string &what)
      : Error(what), exit_code_(exit_code) {}
  int exit_code() const { return exit_code_; }

 private:
  int exit_code_;
};

/// Maps any exception thrown by a stage to its exit code.
int ExitCodeFor(const std::exception &e);

// File names inside a run directory.
inline constexpr const char *kCorpusFile = "corpus.saco";
inline constexpr const char *kAssessFile = "assess.saas";
inline constexpr const char *kAmFile = "am.bundle";
inline constexpr const char *kReportFile = "report.tsv";
inline constexpr const char *kPerSenoneFile = "per_senone.csv";
std::string AdapterFile(const std::string &mode);
std::string DiscriminatorFile(const std::string &mode);
std::string AdaptLogFile(const std::string &mode);

// Fresh, seeded models shaped by the config.
AdultAcousticModel NewAcousticModel(const RunConfig &cfg, std::size_t dim, std::size_t k);
AdaptationNetwork NewAdapter(const RunConfig &cfg, std::size_t dim);
DomainDiscriminator NewDiscriminator(const RunConfig &cfg, DiscriminatorMode mode,
                                     std::size_t dim, std::size_t k);

/// Discriminator trained against the identity adapter with the same
/// budget as an adversarial run; the reference for domain confusion.
DomainDiscriminator TrainReferenceDiscriminator(const RunConfig &cfg,
                                                AdultAcousticModel *am,
                                                const TrainingView &data,
                                                const std::string &mode);

/// Stages.  Each writes its resolved config as <stage>.config in out_dir.
void RunGen(const RunConfig &cfg, const std::string &out_dir);
void RunPretrain(const RunConfig &cfg, const std::string &out_dir);
void RunAdapt(const RunConfig &cfg, const std::string &mode, const std::string &out_dir);
MetricsReport RunEval(const RunConfig &cfg, const std::string &out_dir);

/// In-memory DNN/BAT/SAT comparison on one seed, without files.
struct ArmComparison {
  double dnn_child_error = 0.0;
  double bat_child_error = 0.0;
  double sat_child_error = 0.0;
  double adult_error = 0.0;
  double bat_disc_accuracy = 0.0;
  double sat_disc_accuracy = 0.0;
  double reference_disc_accuracy_bat = 0.0;
  double reference_disc_accuracy_sat = 0.0;
};
ArmComparison CompareArms(const RunConfig &cfg);

}  // namespace satadapt

#endif  // SATADAPT_PIPELINE_H_
