// satadapt/src/synthdata.cc

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

#include "satadapt/synthdata.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "satadapt/error.h"
#include "satadapt/losses.h"
#include "satadapt/param-io.h"
#include "satadapt/rng.h"

namespace satadapt {

namespace {

void RandomUnitRow(Rng *rng, std::span<double> row) {
  double norm = 0.0;
  do {
    norm = 0.0;
    for (double &v : row) {
      v = rng->Gaussian();
      norm += v * v;
    }
  } while (norm == 0.0);
  norm = std::sqrt(norm);
  for (double &v : row) v /= norm;
}

// Senone ids 0..K-1 cycled then shuffled, so counts differ by at most one.
std::vector<int> BalancedLabels(std::size_t n, std::size_t k, Rng *rng) {
  std::vector<int> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<int>(i % k);
  rng->Shuffle(&labels);
  return labels;
}

}  // namespace

void GeneratorConfig::Validate() const {
  if (num_senones < 1) throw ConfigError("num_senones must be >= 1");
  if (dim < 1) throw ConfigError("dim must be >= 1");
  if (shift_profile.size() != num_senones)
    throw ConfigError("shift_profile length " + std::to_string(shift_profile.size()) +
                      " differs from num_senones " + std::to_string(num_senones));
  for (double s : shift_profile)
    if (!(s >= 0.0) || !std::isfinite(s))
      throw ConfigError("shift_profile entries must be finite and >= 0");
  if (n_adult < num_senones || n_child < num_senones)
    throw ConfigError("n_adult and n_child must be >= num_senones");
  if (!(within_class_std > 0.0) || !std::isfinite(within_class_std))
    throw ConfigError("within_class_std must be positive");
}

std::vector<double> DefaultShiftProfile(std::size_t num_senones, double std_dev) {
  static constexpr double kLevels[] = {0.0, 0.5, 1.0, 2.0, 4.0};
  std::vector<double> out(num_senones);
  for (std::size_t k = 0; k < num_senones; ++k) {
    const std::size_t level = std::min<std::size_t>(k * 5 / std::max<std::size_t>(num_senones, 1), 4);
    out[k] = kLevels[level] * std_dev;
  }
  return out;
}

GeneratorConfig DefaultGeneratorConfig(std::uint64_t seed) {
  GeneratorConfig cfg;
  cfg.seed = seed;
  cfg.shift_profile = DefaultShiftProfile(cfg.num_senones, cfg.within_class_std);
  return cfg;
}

std::size_t TrainingView::NumAdult() const {
  return static_cast<std::size_t>(std::count(domain.begin(), domain.end(), kAdult));
}

TrainingView SyntheticCorpus::TrainView() const {
  TrainingView v;
  v.num_senones = num_senones;
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < NumFrames(); ++i)
    if (split[i] == Split::kTrain) rows.push_back(i);
  v.frames = SelectRows(frames, rows);
  v.senone_labels.reserve(rows.size());
  v.domain.reserve(rows.size());
  for (std::size_t i : rows) {
    v.domain.push_back(domain[i]);
    v.senone_labels.push_back(domain[i] == kAdult ? senone_labels[i] : kNoLabel);
  }
  return v;
}

EvalSet SyntheticCorpus::Select(Split s, int domain_filter) const {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < NumFrames(); ++i)
    if (split[i] == s && (domain_filter < 0 || domain[i] == domain_filter)) rows.push_back(i);
  EvalSet e;
  e.frames = SelectRows(frames, rows);
  for (std::size_t i : rows) {
    e.senone_labels.push_back(senone_labels[i]);
    e.domain.push_back(domain[i]);
  }
  return e;
}

CorpusGeometry CorpusGeometryFor(const GeneratorConfig &cfg) {
  cfg.Validate();
  Rng rng(MixSeed(cfg.seed));
  CorpusGeometry g;
  g.adult_means = Matrix(cfg.num_senones, cfg.dim);
  g.shift_directions = Matrix(cfg.num_senones, cfg.dim);
  for (std::size_t k = 0; k < cfg.num_senones; ++k) {
    RandomUnitRow(&rng, g.adult_means.Row(k));
    for (double &v : g.adult_means.Row(k)) v *= 3.0 * cfg.within_class_std;
  }
  for (std::size_t k = 0; k < cfg.num_senones; ++k)
    RandomUnitRow(&rng, g.shift_directions.Row(k));
  return g;
}

SyntheticCorpus GenerateCorpus(const GeneratorConfig &cfg) {
  const CorpusGeometry geo = CorpusGeometryFor(cfg);
  Rng rng(MixSeed(cfg.seed ^ 0x5a5a5a5aULL));
  SyntheticCorpus c;
  c.num_senones = cfg.num_senones;
  const std::size_t total = cfg.n_adult + cfg.n_child + 2 * (cfg.n_dev + cfg.n_test);
  c.frames = Matrix(total, cfg.dim);
  c.senone_labels.reserve(total);
  c.domain.reserve(total);
  c.split.reserve(total);

  struct Block {
    Split split;
    int domain;
    std::size_t count;
  };
  const Block blocks[] = {
      {Split::kTrain, kAdult, cfg.n_adult}, {Split::kTrain, kChild, cfg.n_child},
      {Split::kDev, kAdult, cfg.n_dev},     {Split::kDev, kChild, cfg.n_dev},
      {Split::kTest, kAdult, cfg.n_test},   {Split::kTest, kChild, cfg.n_test},
  };
  std::size_t row = 0;
  for (const Block &b : blocks) {
    const std::vector<int> labels = BalancedLabels(b.count, cfg.num_senones, &rng);
    for (int k : labels) {
      auto out = c.frames.Row(row++);
      auto mean = geo.adult_means.Row(k);
      auto dir = geo.shift_directions.Row(k);
      const double shift = b.domain == kChild ? cfg.shift_profile[k] : 0.0;
      for (std::size_t d = 0; d < cfg.dim; ++d)
        out[d] = mean[d] + shift * dir[d] + cfg.within_class_std * rng.Gaussian();
      c.senone_labels.push_back(k);
      c.domain.push_back(b.domain);
      c.split.push_back(b.split);
    }
  }
  return c;
}

std::uint64_t CorpusFileSize(std::uint64_t rows, std::uint64_t dim) {
  return 4 + 4 + 8 * 3 + 8 * rows * dim + 4 * rows + rows + rows;
}

std::string SerializeCorpus(const SyntheticCorpus &c) {
  std::ostringstream os(std::ios::binary);
  os.write(kCorpusMagic, 4);
  WriteU32(os, kCorpusVersion);
  WriteU64(os, c.NumFrames());
  WriteU64(os, c.frames.NumCols());
  WriteU64(os, c.num_senones);
  for (double v : c.frames.Data()) WriteF64(os, v);
  for (int l : c.senone_labels) WriteU32(os, static_cast<std::uint32_t>(l));
  for (int d : c.domain) os.put(static_cast<char>(d));
  for (Split s : c.split) os.put(static_cast<char>(s));
  return os.str();
}

SyntheticCorpus DeserializeCorpus(const std::string &bytes) {
  std::istringstream is(bytes, std::ios::binary);
  ExpectMagic(is, kCorpusMagic, "corpus");
  const std::uint32_t version = ReadU32(is);
  if (version != kCorpusVersion)
    throw FormatError("corpus: unsupported version " + std::to_string(version));
  const std::uint64_t rows = ReadU64(is), dim = ReadU64(is), k = ReadU64(is);
  if (dim == 0 || rows > (1ull << 32) || dim > (1ull << 20) ||
      bytes.size() != CorpusFileSize(rows, dim))
    throw FormatError("corpus: size does not match header (truncated file?)");
  SyntheticCorpus c;
  c.num_senones = k;
  c.frames = Matrix(rows, dim);
  for (double &v : c.frames.Data()) v = ReadF64(is);
  c.senone_labels.resize(rows);
  for (int &l : c.senone_labels) {
    l = static_cast<int>(ReadU32(is));
    if (l < 0 || static_cast<std::uint64_t>(l) >= k) throw FormatError("corpus: label out of range");
  }
  c.domain.resize(rows);
  for (int &d : c.domain) {
    d = is.get();
    if (d != kAdult && d != kChild) throw FormatError("corpus: bad domain byte");
  }
  c.split.resize(rows);
  for (Split &s : c.split) {
    const int v = is.get();
    if (v < 0 || v > 2) throw FormatError("corpus: bad split byte");
    s = static_cast<Split>(v);
  }
  return c;
}

void SaveCorpus(const SyntheticCorpus &corpus, const std::string &path) {
  WriteFileBytes(path, SerializeCorpus(corpus));
}

SyntheticCorpus LoadCorpus(const std::string &path) {
  return DeserializeCorpus(ReadFileBytes(path));
}

AssessmentCorpus AssessmentCorpus::Slice(std::size_t begin, std::size_t end) const {
  AssessmentCorpus out;
  std::vector<std::size_t> rows;
  for (std::size_t i = begin; i < end && i < Size(); ++i) rows.push_back(i);
  out.features = SelectRows(features, rows);
  for (std::size_t i : rows) {
    out.pronunciation.push_back(pronunciation[i]);
    out.fluency.push_back(fluency[i]);
  }
  return out;
}

AssessmentCorpus GenerateAssessmentCorpus(std::size_t n, std::uint64_t seed) {
  if (n < 50) throw ConfigError("assessment corpus needs n >= 50");
  constexpr std::size_t kDim = 30;
  constexpr int kLevels = kMaxLevel - kMinLevel + 1;
  constexpr double kMeanScale = 0.5;
  Rng rng(MixSeed(seed ^ 0xa55e55ULL));
  Matrix pron_means(kLevels, kDim), flu_means(kLevels, kDim);
  for (double &v : pron_means.Data()) v = kMeanScale * rng.Gaussian();
  for (double &v : flu_means.Data()) v = kMeanScale * rng.Gaussian();

  AssessmentCorpus c;
  c.features = Matrix(n, kDim);
  c.pronunciation.resize(n);
  c.fluency.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int z = kMinLevel + static_cast<int>(rng.UniformInt(kLevels));
    const double u = rng.Uniform();
    const int noise = u < 0.15 ? -1 : (u < 0.85 ? 0 : 1);
    const int flu = std::clamp(z + noise, kMinLevel, kMaxLevel);
    c.pronunciation[i] = z;
    c.fluency[i] = flu;
    auto row = c.features.Row(i);
    auto pm = pron_means.Row(z - kMinLevel);
    auto fm = flu_means.Row(flu - kMinLevel);
    for (std::size_t d = 0; d < kDim; ++d) row[d] = pm[d] + fm[d] + rng.Gaussian();
  }
  return c;
}

void SaveAssessmentCorpus(const AssessmentCorpus &c, const std::string &path) {
  std::ostringstream os(std::ios::binary);
  os.write(kAssessMagic, 4);
  WriteU32(os, kCorpusVersion);
  WriteU64(os, c.Size());
  WriteU64(os, c.features.NumCols());
  for (double v : c.features.Data()) WriteF64(os, v);
  for (int l : c.pronunciation) WriteU32(os, static_cast<std::uint32_t>(l));
  for (int l : c.fluency) WriteU32(os, static_cast<std::uint32_t>(l));
  WriteFileBytes(path, os.str());
}

AssessmentCorpus LoadAssessmentCorpus(const std::string &path) {
  const std::string bytes = ReadFileBytes(path);
  std::istringstream is(bytes, std::ios::binary);
  ExpectMagic(is, kAssessMagic, "assessment corpus");
  if (ReadU32(is) != kCorpusVersion) throw FormatError("assessment corpus: bad version");
  const std::uint64_t rows = ReadU64(is), dim = ReadU64(is);
  if (bytes.size() != 24 + 8 * rows * dim + 8 * rows)
    throw FormatError("assessment corpus: size does not match header");
  AssessmentCorpus c;
  c.features = Matrix(rows, dim);
  for (double &v : c.features.Data()) v = ReadF64(is);
  c.pronunciation.resize(rows);
  c.fluency.resize(rows);
  for (int &l : c.pronunciation) l = static_cast<int>(ReadU32(is));
  for (int &l : c.fluency) l = static_cast<int>(ReadU32(is));
  for (std::size_t i = 0; i < rows; ++i)
    if (c.pronunciation[i] < kMinLevel || c.pronunciation[i] > kMaxLevel ||
        c.fluency[i] < kMinLevel || c.fluency[i] > kMaxLevel)
      throw FormatError("assessment corpus: level out of range");
  return c;
}

}  // namespace satadapt
