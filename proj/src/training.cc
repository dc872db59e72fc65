// satadapt/src/training.cc

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

#include "satadapt/training.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>

#include "satadapt/error.h"

namespace satadapt {

namespace {

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::size_t CountDomainCorrect(const Matrix &domain_post, std::span<const int> indicator) {
  std::size_t correct = 0;
  for (std::size_t i = 0; i < domain_post.NumRows(); ++i) {
    const int pred = domain_post(i, kChild) > domain_post(i, kAdult) ? kChild : kAdult;
    if (pred == indicator[i]) ++correct;
  }
  return correct;
}

// Domain loss for the discriminator mode; fills alpha statistics in SAT.
LossResult DomainLoss(const DomainDiscriminator &disc, const Matrix &disc_out,
                      const Batch &batch, const Matrix *alpha, StepStats *stats) {
  if (disc.mode() == DiscriminatorMode::kBinary)
    return BinaryDomainLoss(disc_out, batch.domain);
  for (std::size_t i = 0; i < alpha->NumRows(); ++i) {
    double row_sum = 0.0, expected = 0.0;
    for (std::size_t k = 0; k < alpha->NumCols(); ++k) {
      row_sum += (*alpha)(i, k);
      expected += static_cast<double>(k + 1) * (*alpha)(i, k);
    }
    if (std::fabs(row_sum - 1.0) > 1e-9)
      throw NonFiniteError("senone posterior row does not sum to 1");
    stats->alpha_checksum += expected;
  }
  stats->alpha_rows += alpha->NumRows();
  return SenoneAwareDomainLoss(disc_out, batch.domain, *alpha);
}

void CheckAdversarialInputs(const AdaptationNetwork &adapter, const AdultAcousticModel &am,
                            const DomainDiscriminator &disc, const AdversarialConfig &cfg) {
  if (!am.frozen())
    throw FrozenError("adversarial training requires a frozen adult acoustic model");
  if (disc.mode() != cfg.mode)
    throw ConfigError("discriminator mode does not match the configured mode");
  if (adapter.dim() != am.input_dim() || disc.network().spec().InputDim() != am.input_dim())
    throw ShapeError("adapter, acoustic model and discriminator dims disagree");
  if (cfg.mode == DiscriminatorMode::kSenoneAware && disc.num_senones() != am.num_senones())
    throw ShapeError("discriminator senone count differs from the acoustic model");
}

}  // namespace

UpdateScheme UpdateSchemeFromName(std::string_view name) {
  if (name == "gradient_reversal") return UpdateScheme::kGradientReversal;
  if (name == "alternating") return UpdateScheme::kAlternating;
  throw ConfigError("unknown update scheme '" + std::string(name) + "'");
}

LambdaShape LambdaShapeFromName(std::string_view name) {
  if (name == "constant") return LambdaShape::kConstant;
  if (name == "ramp") return LambdaShape::kRamp;
  throw ConfigError("unknown lambda schedule '" + std::string(name) + "'");
}

AlphaSource AlphaSourceFromName(std::string_view name) {
  if (name == "adapted") return AlphaSource::kAdapted;
  if (name == "raw") return AlphaSource::kRaw;
  throw ConfigError("unknown alpha source '" + std::string(name) + "'");
}

std::string_view UpdateSchemeName(UpdateScheme s) {
  return s == UpdateScheme::kGradientReversal ? "gradient_reversal" : "alternating";
}
std::string_view LambdaShapeName(LambdaShape s) {
  return s == LambdaShape::kConstant ? "constant" : "ramp";
}
std::string_view AlphaSourceName(AlphaSource s) {
  return s == AlphaSource::kAdapted ? "adapted" : "raw";
}

void AdversarialConfig::Validate() const {
  if (!(reversal_coefficient >= 0.0)) throw ConfigError("reversal coefficient must be >= 0");
  if (!(lr_adapter > 0.0) || !(lr_discriminator > 0.0))
    throw ConfigError("learning rates must be positive");
  if (!(momentum >= 0.0 && momentum < 1.0)) throw ConfigError("momentum must be in [0, 1)");
  if (batch_size < 2) throw ConfigError("batch_size must be >= 2");
}

std::string TrainLog::ToText(bool include_timing) const {
  std::string out = "# epoch\tE\tce\tdom_loss\t" + accuracy_name +
                    "\tseconds\talpha_rows\talpha_checksum\n";
  char buf[512];
  for (const EpochRecord &r : records) {
    std::snprintf(buf, sizeof(buf), "%zu\t%.17g\t%.17g\t%.17g\t%.17g\t%.6f\t%zu\t%.17g\n",
                  r.epoch, r.objective, r.senone_ce, r.domain_loss, r.accuracy,
                  include_timing ? r.seconds : 0.0, r.alpha_rows, r.alpha_checksum);
    out += buf;
  }
  return out;
}

double LambdaSchedule(std::size_t epoch, std::size_t total, LambdaShape shape) {
  if (shape == LambdaShape::kConstant) return 1.0;
  if (total == 0) return 1.0;
  const double progress = static_cast<double>(epoch) / static_cast<double>(total);
  return 2.0 / (1.0 + std::exp(-10.0 * progress)) - 1.0;
}

Batch MakeBatch(const TrainingView &data, std::span<const std::size_t> rows) {
  Batch b;
  b.features = SelectRows(data.frames, rows);
  b.senone_labels.reserve(rows.size());
  b.domain.reserve(rows.size());
  for (std::size_t r : rows) {
    b.senone_labels.push_back(data.senone_labels[r]);
    b.domain.push_back(data.domain[r]);
  }
  return b;
}

std::vector<std::vector<std::size_t>> StratifiedBatches(const TrainingView &data,
                                                        std::size_t batch_size, Rng *rng) {
  if (batch_size < 2) throw ConfigError("batch_size must be >= 2");
  std::vector<std::size_t> adult, child;
  for (std::size_t i = 0; i < data.NumFrames(); ++i)
    (data.domain[i] == kAdult ? adult : child).push_back(i);
  if (adult.empty()) throw ConfigError("training data has no adult frames");
  rng->Shuffle(&adult);
  rng->Shuffle(&child);

  const std::size_t total = adult.size() + child.size();
  const std::size_t num_batches = (total + batch_size - 1) / batch_size;
  const std::size_t min_adult = (batch_size + 3) / 4;
  std::vector<std::vector<std::size_t>> batches(num_batches);
  std::size_t adult_pos = 0;
  for (std::size_t b = 0; b < num_batches; ++b) {
    const std::size_t c_begin = child.size() * b / num_batches;
    const std::size_t c_end = child.size() * (b + 1) / num_batches;
    std::size_t n_adult = adult.size() * (b + 1) / num_batches - adult.size() * b / num_batches;
    n_adult = std::max(n_adult, min_adult);
    auto &batch = batches[b];
    for (std::size_t i = 0; i < n_adult; ++i) batch.push_back(adult[(adult_pos++) % adult.size()]);
    for (std::size_t i = c_begin; i < c_end; ++i) batch.push_back(child[i]);
  }
  return batches;
}

TrainLog PretrainAdultAm(AdultAcousticModel *am, const TrainingView &data,
                         const PretrainConfig &cfg) {
  if (am->frozen()) throw UsageError("acoustic model is already pretrained and frozen");
  if (cfg.batch_size < 1) throw ConfigError("batch_size must be >= 1");
  std::vector<std::size_t> adult;
  for (std::size_t i = 0; i < data.NumFrames(); ++i)
    if (data.domain[i] == kAdult) {
      if (data.senone_labels[i] == kNoLabel)
        throw ConfigError("adult frame without a senone label");
      adult.push_back(i);
    }
  if (adult.empty() && cfg.epochs > 0) throw ConfigError("no adult frames to pretrain on");

  Rng rng(MixSeed(cfg.seed ^ 0x70726574ULL));
  TrainLog log;
  log.accuracy_name = "senone_acc";
  Network &net = am->network();
  for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    const auto start = Clock::now();
    rng.Shuffle(&adult);
    double ce_sum = 0.0;
    std::size_t correct = 0;
    for (std::size_t b = 0; b < adult.size(); b += cfg.batch_size) {
      const std::size_t e = std::min(adult.size(), b + cfg.batch_size);
      const Batch batch = MakeBatch(data, std::span(adult).subspan(b, e - b));
      ForwardTrace trace = net.Forward(batch.features, true, &rng);
      LossResult ce = SenoneCeLoss(trace.output(), batch.senone_labels);
      const auto pred = RowArgmax(trace.output());
      for (std::size_t i = 0; i < pred.size(); ++i)
        if (static_cast<int>(pred[i]) == batch.senone_labels[i]) ++correct;
      ce_sum += ce.sum;
      net.Backward(trace, ce.grad);
      SgdStep(&net.params(), cfg.learning_rate, cfg.momentum);
    }
    EpochRecord r;
    r.epoch = epoch;
    r.senone_ce = ce_sum / static_cast<double>(adult.size());
    r.objective = r.senone_ce;
    r.accuracy = static_cast<double>(correct) / static_cast<double>(adult.size());
    r.seconds = SecondsSince(start);
    log.records.push_back(r);
  }
  am->Freeze();
  return log;
}

StepStats AccumulateAdversarialGradients(AdaptationNetwork *adapter,
                                         AdultAcousticModel *am,
                                         DomainDiscriminator *disc, const Batch &batch,
                                         const AdversarialConfig &cfg, double lambda,
                                         Rng *rng) {
  CheckAdversarialInputs(*adapter, *am, *disc, cfg);
  StepStats stats;
  const ComposedForward fwd =
      ComposeAdaptedPosteriors(*adapter, *am, batch.features, true, true, rng);
  const LossResult ce = SenoneCeLoss(fwd.posteriors(), batch.senone_labels);

  Matrix alpha;
  if (cfg.mode == DiscriminatorMode::kSenoneAware) {
    alpha = cfg.alpha_source == AlphaSource::kAdapted
                ? ExtractSenonePosteriors(*am, fwd.features())
                : ExtractSenonePosteriors(*am, batch.features);
  }
  const ForwardTrace disc_trace = Discriminate(*disc, fwd.features(), true, rng);
  const LossResult dom = DomainLoss(*disc, disc_trace.output(), batch, &alpha, &stats);
  stats.terms = MultitaskObjective(ce.sum, ce.count, dom.sum, batch.features.NumRows());

  const Matrix domain_post = disc->mode() == DiscriminatorMode::kBinary
                                 ? disc_trace.output()
                                 : MarginalizeDomain(disc_trace.output(), disc->num_senones());
  stats.disc_correct = CountDomainCorrect(domain_post, batch.domain);

  const Matrix dom_feature_grad = disc->network().Backward(disc_trace, dom.grad);
  if (cfg.update_adapter) {
    Matrix upstream = BackwardThroughAm(am, fwd, ce.grad);
    upstream.AddScaled(dom_feature_grad, -lambda);
    adapter->Backward(fwd.adapter, upstream);
  }
  return stats;
}

StepStats AdversarialStep(AdaptationNetwork *adapter, AdultAcousticModel *am,
                          DomainDiscriminator *disc, const Batch &batch,
                          const AdversarialConfig &cfg, double lambda, Rng *rng) {
  if (cfg.update_scheme == UpdateScheme::kGradientReversal || !cfg.update_adapter) {
    StepStats s = AccumulateAdversarialGradients(adapter, am, disc, batch, cfg, lambda, rng);
    if (cfg.update_adapter) SgdStep(&adapter->params(), cfg.lr_adapter, cfg.momentum);
    SgdStep(&disc->params(), cfg.lr_discriminator, cfg.momentum);
    return s;
  }
  // Alternating: discriminator descent on L_dom with the adapter held,
  // then an adapter descent on CE - lambda * L_dom against the updated
  // discriminator.
  AdversarialConfig disc_only = cfg;
  disc_only.update_adapter = false;
  AccumulateAdversarialGradients(adapter, am, disc, batch, disc_only, lambda, rng);
  SgdStep(&disc->params(), cfg.lr_discriminator, cfg.momentum);

  StepStats s = AccumulateAdversarialGradients(adapter, am, disc, batch, cfg, lambda, rng);
  SgdStep(&adapter->params(), cfg.lr_adapter, cfg.momentum);
  disc->params().ZeroGrad();
  return s;
}

TrainLog AdversarialTrain(AdaptationNetwork *adapter, AdultAcousticModel *am,
                          DomainDiscriminator *disc, const TrainingView &data,
                          const AdversarialConfig &cfg) {
  cfg.Validate();
  CheckAdversarialInputs(*adapter, *am, *disc, cfg);
  bool has_child = false;
  for (int d : data.domain) has_child = has_child || d == kChild;
  if (!has_child || data.NumAdult() == 0)
    throw ConfigError("adversarial training needs frames from both domains");

  Rng rng(MixSeed(cfg.seed ^ 0x61647674ULL));
  TrainLog log;
  adapter->params().ZeroGrad();
  disc->params().ZeroGrad();
  for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    const auto start = Clock::now();
    const double lambda =
        cfg.reversal_coefficient * LambdaSchedule(epoch - 1, cfg.epochs, cfg.lambda_shape);
    const auto batches = StratifiedBatches(data, cfg.batch_size, &rng);
    double ce_sum = 0.0, dom_sum = 0.0, alpha_checksum = 0.0;
    std::size_t n = 0, total = 0, correct = 0, alpha_rows = 0;
    for (const auto &rows : batches) {
      const Batch batch = MakeBatch(data, rows);
      const StepStats s = AdversarialStep(adapter, am, disc, batch, cfg, lambda, &rng);
      ce_sum += s.terms.senone_ce_sum;
      dom_sum += s.terms.domain_loss_sum;
      n += s.terms.n;
      total += s.terms.N;
      correct += s.disc_correct;
      alpha_rows += s.alpha_rows;
      alpha_checksum += s.alpha_checksum;
    }
    const BatchLossTerms terms = MultitaskObjective(ce_sum, n, dom_sum, total);
    EpochRecord r;
    r.epoch = epoch;
    r.objective = terms.objective;
    r.senone_ce = terms.senone_ce_mean;
    r.domain_loss = terms.domain_loss_mean;
    r.accuracy = static_cast<double>(correct) / static_cast<double>(total);
    r.alpha_rows = alpha_rows;
    r.alpha_checksum = alpha_rows ? alpha_checksum / static_cast<double>(alpha_rows) : 0.0;
    r.seconds = SecondsSince(start);
    if (!std::isfinite(r.objective)) throw NonFiniteError("training diverged");
    log.records.push_back(r);
  }
  return log;
}

}  // namespace satadapt
