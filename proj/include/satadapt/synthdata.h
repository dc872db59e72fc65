// satadapt/satadapt/synthdata.h

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

#ifndef SATADAPT_SYNTHDATA_H_
#define SATADAPT_SYNTHDATA_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "satadapt/matrix.h"

namespace satadapt {

enum class Split : std::uint8_t { kTrain = 0, kDev = 1, kTest = 2 };

/// Two-domain Gaussian corpus description.  Frame counts are per domain:
/// each domain gets n_train + n_dev + n_test frames.
struct GeneratorConfig {
  std::size_t num_senones = 10;
  std::size_t dim = 20;
  std::size_t n_adult = 5000;  // adult training frames
  std::size_t n_child = 5000;  // child training frames
  std::size_t n_dev = 1000;    // held-out frames per domain
  std::size_t n_test = 1000;
  /// Child shift magnitude for each senone (absolute feature units).
  std::vector<double> shift_profile;
  double within_class_std = 1.0;
  std::uint64_t seed = 1;

  /// Throws ConfigError on violated constraints.
  void Validate() const;
};

/// (0, 0, .5, .5, 1, 1, 2, 2, 4, 4) * std for K = 10; for other K the
/// same five levels are repeated in pairs.
std::vector<double> DefaultShiftProfile(std::size_t num_senones, double std_dev);
GeneratorConfig DefaultGeneratorConfig(std::uint64_t seed = 1);

/// What training code may see: child frames carry kNoLabel.
struct TrainingView {
  Matrix frames;
  std::vector<int> senone_labels;
  std::vector<int> domain;
  std::size_t num_senones = 0;

  std::size_t NumFrames() const { return frames.NumRows(); }
  std::size_t NumAdult() const;
};

/// Labeled subset for evaluation, including hidden child labels.
struct EvalSet {
  Matrix frames;
  std::vector<int> senone_labels;
  std::vector<int> domain;
};

class SyntheticCorpus {
 public:
  Matrix frames;
  std::vector<int> senone_labels;  // 0-based, defined for every frame
  std::vector<int> domain;         // kAdult / kChild
  std::vector<Split> split;
  std::size_t num_senones = 0;

  std::size_t NumFrames() const { return frames.NumRows(); }

  /// Training frames of both domains with child labels withheld.
  TrainingView TrainView() const;
  /// Frames of `split`; `domain_filter` < 0 keeps both domains.
  EvalSet Select(Split s, int domain_filter = -1) const;

  friend bool operator==(const SyntheticCorpus &, const SyntheticCorpus &) = default;
};

/// Adult frames of senone k ~ N(mu_k, std^2 I) with mu_k = 3 std v_k for
/// random unit v_k; child frames ~ N(mu_k + shift[k] u_k, std^2 I) for a
/// second random unit u_k.  Senones are balanced within +-1 per domain and
/// split.
SyntheticCorpus GenerateCorpus(const GeneratorConfig &cfg);

/// Class means and shift directions drawn from the seed, exposed for
/// oracles.
struct CorpusGeometry {
  Matrix adult_means;       // K x dim
  Matrix shift_directions;  // K x dim, unit rows
};
CorpusGeometry CorpusGeometryFor(const GeneratorConfig &cfg);

// Corpus file layout (little-endian):
//   "SACO" | u32 version | u64 rows | u64 dim | u64 num_senones |
//   rows*dim f64 frames | rows i32 senone labels | rows u8 domain |
//   rows u8 split
inline constexpr char kCorpusMagic[4] = {'S', 'A', 'C', 'O'};
inline constexpr std::uint32_t kCorpusVersion = 1;

std::string SerializeCorpus(const SyntheticCorpus &corpus);
SyntheticCorpus DeserializeCorpus(const std::string &bytes);
void SaveCorpus(const SyntheticCorpus &corpus, const std::string &path);
SyntheticCorpus LoadCorpus(const std::string &path);
std::uint64_t CorpusFileSize(std::uint64_t rows, std::uint64_t dim);

/// Proficiency-assessment corpus: 30-dim features with pronunciation and
/// fluency levels in 1..5.
struct AssessmentCorpus {
  Matrix features;
  std::vector<int> pronunciation;
  std::vector<int> fluency;

  std::size_t Size() const { return features.NumRows(); }
  AssessmentCorpus Slice(std::size_t begin, std::size_t end) const;
  friend bool operator==(const AssessmentCorpus &, const AssessmentCorpus &) = default;
};

inline constexpr int kMinLevel = 1;
inline constexpr int kMaxLevel = 5;

/// Latent z ~ U{1..5}; pronunciation = z; fluency = clamp(z + e) with
/// e = -1/0/+1 at 0.15/0.70/0.15.  Features are the sum of a per-level
/// pronunciation mean, a per-level fluency mean, and unit Gaussian noise.
/// Requires n >= 50.
AssessmentCorpus GenerateAssessmentCorpus(std::size_t n, std::uint64_t seed);

// "SAAS" | u32 version | u64 rows | u64 dim | rows*dim f64 | rows i32 pron |
// rows i32 flu
inline constexpr char kAssessMagic[4] = {'S', 'A', 'A', 'S'};
void SaveAssessmentCorpus(const AssessmentCorpus &corpus, const std::string &path);
AssessmentCorpus LoadAssessmentCorpus(const std::string &path);

}  // namespace satadapt

#endif  // SATADAPT_SYNTHDATA_H_
