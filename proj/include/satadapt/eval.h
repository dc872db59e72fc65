// satadapt/satadapt/eval.h

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

#ifndef SATADAPT_EVAL_H_
#define SATADAPT_EVAL_H_

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "satadapt/matrix.h"
#include "satadapt/models.h"
#include "satadapt/synthdata.h"

namespace satadapt {

/// 100 * mismatches / total.  Throws on empty or unequal inputs.
double SenoneErrorRate(std::span<const std::size_t> predictions, std::span<const int> truth);

/// 100 * (baseline - improved) / baseline; baseline must be positive.
double RelativeReduction(double baseline, double improved);
/// baseline - improved, in the metric's own units.
double AbsoluteReduction(double baseline, double improved);

/// Frame error of the frozen AM on `frames`, optionally through the
/// adapter.
double AdaptedSenoneError(const AdaptationNetwork &adapter, const AdultAcousticModel &am,
                          const EvalSet &set, bool apply_adapter);

/// Per-senone error breakdown (percent), index = senone id.
std::vector<double> PerSenoneError(const AdaptationNetwork &adapter,
                                   const AdultAcousticModel &am, const EvalSet &set,
                                   bool apply_adapter);

struct DomainConfusion {
  double accuracy = 0.0;         // percent
  double mean_confidence = 0.0;  // mean max domain posterior
};

/// Accuracy of the discriminator's marginal domain decision on adapted
/// features of both domains.  Throws if `set` holds a single domain.
DomainConfusion MeasureDomainConfusion(const DomainDiscriminator &disc,
                                       const AdaptationNetwork &adapter, const EvalSet &set);

enum class LevelDecoding { kArgmax, kExpected };

struct HeadMetrics {
  double accuracy = 0.0;  // percent of argmax-correct levels
  double mse = 0.0;       // mean squared level error
};

struct AssessmentMetrics {
  HeadMetrics pronunciation;
  HeadMetrics fluency;
};

/// Accuracy always uses argmax levels.  MSE uses argmax levels by
/// default; kExpected scores the posterior mean level instead.
AssessmentMetrics EvaluateAssessment(const AssessmentNetwork &net,
                                     const AssessmentCorpus &corpus,
                                     LevelDecoding decoding = LevelDecoding::kArgmax);

/// Accuracy/MSE of a fixed per-frame level prediction against truth.
HeadMetrics ScoreLevels(std::span<const double> predicted, std::span<const int> truth);

struct AssessmentTrainConfig {
  std::size_t epochs = 30;
  double learning_rate = 0.02;
  double momentum = 0.9;
  std::size_t batch_size = 32;
  std::uint64_t seed = 1;
};

/// Joint cross-entropy training of both heads; returns per-epoch mean
/// summed loss.
std::vector<double> TrainAssessment(AssessmentNetwork *net, const AssessmentCorpus &train,
                                    const AssessmentTrainConfig &cfg);

/// Named scalar metrics plus a header identifying the run.
struct MetricsReport {
  std::string fingerprint;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> notes;  // extra header lines
  std::vector<std::pair<std::string, double>> metrics;

  void Add(const std::string &name, double value);
  const double *Find(const std::string &name) const;
  friend bool operator==(const MetricsReport &, const MetricsReport &) = default;
};

// Report text: "# fingerprint <hex>", "# seed <n>", optional
// "# <key> <value>" notes, then one "name<TAB>value" line per metric.
std::string FormatReport(const MetricsReport &report);
MetricsReport ParseReport(const std::string &text);
void WriteReport(const MetricsReport &report, const std::string &path);
MetricsReport ReadReport(const std::string &path);

/// FNV-1a 64 of the text, as 16 hex digits.
std::string Fingerprint(const std::string &text);

/// Metric names an evaluation run emits, in order, given which
/// adaptation arms are present.
std::vector<std::string> RegisteredMetricNames(bool have_bat, bool have_sat);

/// CSV with header "senone,<arm>,..." and one row per senone.
std::string PerSenoneCsv(const std::vector<std::string> &arms,
                         const std::vector<std::vector<double>> &errors);

}  // namespace satadapt

#endif  // SATADAPT_EVAL_H_
