// satadapt/satadapt/training.h

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

#ifndef SATADAPT_TRAINING_H_
#define SATADAPT_TRAINING_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "satadapt/losses.h"
#include "satadapt/matrix.h"
#include "satadapt/models.h"
#include "satadapt/rng.h"
#include "satadapt/synthdata.h"

namespace satadapt {

enum class UpdateScheme { kGradientReversal, kAlternating };
enum class LambdaShape { kConstant, kRamp };
enum class AlphaSource { kAdapted, kRaw };

UpdateScheme UpdateSchemeFromName(std::string_view name);
LambdaShape LambdaShapeFromName(std::string_view name);
AlphaSource AlphaSourceFromName(std::string_view name);
std::string_view UpdateSchemeName(UpdateScheme s);
std::string_view LambdaShapeName(LambdaShape s);
std::string_view AlphaSourceName(AlphaSource s);

struct PretrainConfig {
  std::size_t epochs = 20;
  double learning_rate = 0.005;
  double momentum = 0.9;
  std::size_t batch_size = 64;
  std::uint64_t seed = 1;
};

struct AdversarialConfig {
  DiscriminatorMode mode = DiscriminatorMode::kBinary;
  /// Weight of the reversed domain-loss gradient reaching the adapter;
  /// multiplied by the schedule value each epoch.
  double reversal_coefficient = 1.0;
  LambdaShape lambda_shape = LambdaShape::kRamp;
  UpdateScheme update_scheme = UpdateScheme::kGradientReversal;
  double lr_adapter = 0.01;
  double lr_discriminator = 0.05;
  double momentum = 0.9;
  std::size_t epochs = 20;
  std::size_t batch_size = 128;
  std::uint64_t seed = 1;
  AlphaSource alpha_source = AlphaSource::kAdapted;
  /// When false the adapter is held fixed and only the discriminator
  /// learns; used for the identity-adapter reference discriminator.
  bool update_adapter = true;

  void Validate() const;
};

/// One line of a training log.  `accuracy` is discriminator domain
/// accuracy for adversarial runs and senone accuracy for pretraining.
struct EpochRecord {
  std::size_t epoch = 0;
  double objective = 0.0;
  double senone_ce = 0.0;
  double domain_loss = 0.0;
  double accuracy = 0.0;
  double seconds = 0.0;
  std::size_t alpha_rows = 0;
  double alpha_checksum = 0.0;
};

struct TrainLog {
  std::string accuracy_name = "disc_acc";
  std::vector<EpochRecord> records;

  /// Header line plus one tab-separated line per epoch: epoch, E, ce,
  /// dom_loss, accuracy, seconds, alpha_rows, alpha_checksum.  With
  /// include_timing false the seconds column is written as 0.
  std::string ToText(bool include_timing = true) const;
};

/// constant -> 1; ramp -> 2 / (1 + exp(-10 epoch / total)) - 1.
double LambdaSchedule(std::size_t epoch, std::size_t total, LambdaShape shape);

/// Trains the model by senone cross-entropy on the adult frames of `data`
/// and freezes it.  Throws UsageError if the model is already frozen.
TrainLog PretrainAdultAm(AdultAcousticModel *am, const TrainingView &data,
                         const PretrainConfig &cfg);

struct Batch {
  Matrix features;
  std::vector<int> senone_labels;
  std::vector<int> domain;
};

Batch MakeBatch(const TrainingView &data, std::span<const std::size_t> rows);

/// Epoch partition with at least a quarter adult frames in every batch;
/// adult frames are recycled if the corpus is short of them.
std::vector<std::vector<std::size_t>> StratifiedBatches(const TrainingView &data,
                                                        std::size_t batch_size, Rng *rng);

struct StepStats {
  BatchLossTerms terms;
  std::size_t disc_correct = 0;
  std::size_t alpha_rows = 0;
  double alpha_checksum = 0.0;
};

/// Forward and backward for one batch without touching parameter values.
/// The discriminator receives d(L_dom)/d(theta_dom); the adapter (if
/// cfg.update_adapter) receives d(CE - lambda * L_dom)/d(theta_adpt).
StepStats AccumulateAdversarialGradients(AdaptationNetwork *adapter,
                                         AdultAcousticModel *am,
                                         DomainDiscriminator *disc, const Batch &batch,
                                         const AdversarialConfig &cfg, double lambda,
                                         Rng *rng);

/// One full update on a batch according to cfg.update_scheme.
StepStats AdversarialStep(AdaptationNetwork *adapter, AdultAcousticModel *am,
                          DomainDiscriminator *disc, const Batch &batch,
                          const AdversarialConfig &cfg, double lambda, Rng *rng);

/// Min-max training of adapter and discriminator against the frozen AM.
TrainLog AdversarialTrain(AdaptationNetwork *adapter, AdultAcousticModel *am,
                          DomainDiscriminator *disc, const TrainingView &data,
                          const AdversarialConfig &cfg);

}  // namespace satadapt

#endif  // SATADAPT_TRAINING_H_
