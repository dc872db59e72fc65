// satadapt/src/eval.cc

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

#include "satadapt/eval.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "satadapt/error.h"
#include "satadapt/losses.h"
#include "satadapt/param-io.h"
#include "satadapt/rng.h"

namespace satadapt {

double SenoneErrorRate(std::span<const std::size_t> predictions, std::span<const int> truth) {
  if (predictions.size() != truth.size())
    throw ShapeError("SenoneErrorRate: prediction and truth lengths differ");
  if (predictions.empty()) throw ConfigError("SenoneErrorRate: empty input");
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < truth.size(); ++i)
    if (static_cast<long long>(predictions[i]) != truth[i]) ++wrong;
  return 100.0 * static_cast<double>(wrong) / static_cast<double>(truth.size());
}

double RelativeReduction(double baseline, double improved) {
  if (!(baseline > 0.0)) throw ConfigError("relative reduction needs a positive baseline");
  return 100.0 * (baseline - improved) / baseline;
}

double AbsoluteReduction(double baseline, double improved) { return baseline - improved; }

namespace {

std::vector<std::size_t> PredictSenones(const AdaptationNetwork &adapter,
                                        const AdultAcousticModel &am, const Matrix &frames,
                                        bool apply_adapter) {
  const ComposedForward fwd = ComposeAdaptedPosteriors(adapter, am, frames, apply_adapter);
  return RowArgmax(fwd.posteriors());
}

}  // namespace

double AdaptedSenoneError(const AdaptationNetwork &adapter, const AdultAcousticModel &am,
                          const EvalSet &set, bool apply_adapter) {
  return SenoneErrorRate(PredictSenones(adapter, am, set.frames, apply_adapter),
                         set.senone_labels);
}

std::vector<double> PerSenoneError(const AdaptationNetwork &adapter,
                                   const AdultAcousticModel &am, const EvalSet &set,
                                   bool apply_adapter) {
  const auto pred = PredictSenones(adapter, am, set.frames, apply_adapter);
  std::vector<double> wrong(am.num_senones(), 0.0), count(am.num_senones(), 0.0);
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const int t = set.senone_labels[i];
    count[t] += 1.0;
    if (static_cast<int>(pred[i]) != t) wrong[t] += 1.0;
  }
  for (std::size_t k = 0; k < wrong.size(); ++k)
    wrong[k] = count[k] > 0.0 ? 100.0 * wrong[k] / count[k] : 0.0;
  return wrong;
}

DomainConfusion MeasureDomainConfusion(const DomainDiscriminator &disc,
                                       const AdaptationNetwork &adapter, const EvalSet &set) {
  const bool has_adult = std::count(set.domain.begin(), set.domain.end(), kAdult) > 0;
  const bool has_child = std::count(set.domain.begin(), set.domain.end(), kChild) > 0;
  if (!has_adult || !has_child)
    throw ConfigError("domain confusion needs frames from both domains");
  const Matrix post = disc.DomainPosteriors(adapter.Apply(set.frames));
  DomainConfusion dc;
  std::size_t correct = 0;
  double conf = 0.0;
  for (std::size_t i = 0; i < post.NumRows(); ++i) {
    const int pred = post(i, kChild) > post(i, kAdult) ? kChild : kAdult;
    if (pred == set.domain[i]) ++correct;
    conf += std::max(post(i, kAdult), post(i, kChild));
  }
  const double n = static_cast<double>(post.NumRows());
  dc.accuracy = 100.0 * static_cast<double>(correct) / n;
  dc.mean_confidence = conf / n;
  return dc;
}

HeadMetrics ScoreLevels(std::span<const double> predicted, std::span<const int> truth) {
  if (predicted.size() != truth.size()) throw ShapeError("ScoreLevels: length mismatch");
  if (truth.empty()) throw ConfigError("ScoreLevels: empty corpus");
  HeadMetrics m;
  std::size_t correct = 0;
  double se = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (predicted[i] == static_cast<double>(truth[i])) ++correct;
    const double d = predicted[i] - truth[i];
    se += d * d;
  }
  m.accuracy = 100.0 * static_cast<double>(correct) / static_cast<double>(truth.size());
  m.mse = se / static_cast<double>(truth.size());
  return m;
}

namespace {

HeadMetrics ScoreHead(const Matrix &post, std::span<const int> truth, LevelDecoding decoding) {
  const auto arg = RowArgmax(post);
  std::vector<double> argmax_levels(arg.size()), decoded(arg.size());
  for (std::size_t i = 0; i < arg.size(); ++i) {
    argmax_levels[i] = static_cast<double>(arg[i]) + kMinLevel;
    if (decoding == LevelDecoding::kExpected) {
      double e = 0.0;
      for (std::size_t c = 0; c < post.NumCols(); ++c)
        e += post(i, c) * static_cast<double>(c + kMinLevel);
      decoded[i] = e;
    } else {
      decoded[i] = argmax_levels[i];
    }
  }
  HeadMetrics m = ScoreLevels(argmax_levels, truth);
  m.mse = ScoreLevels(decoded, truth).mse;
  return m;
}

std::vector<int> ZeroBasedLevels(std::span<const int> levels) {
  std::vector<int> out(levels.size());
  for (std::size_t i = 0; i < levels.size(); ++i) out[i] = levels[i] - kMinLevel;
  return out;
}

}  // namespace

AssessmentMetrics EvaluateAssessment(const AssessmentNetwork &net,
                                     const AssessmentCorpus &corpus, LevelDecoding decoding) {
  if (corpus.Size() == 0) throw ConfigError("assessment metrics on an empty corpus");
  const auto out = net.Forward(corpus.features, false, nullptr);
  AssessmentMetrics m;
  m.pronunciation = ScoreHead(out.pronunciation.output(), corpus.pronunciation, decoding);
  m.fluency = ScoreHead(out.fluency.output(), corpus.fluency, decoding);
  return m;
}

std::vector<double> TrainAssessment(AssessmentNetwork *net, const AssessmentCorpus &train,
                                    const AssessmentTrainConfig &cfg) {
  if (train.Size() == 0) throw ConfigError("empty assessment training set");
  Rng rng(MixSeed(cfg.seed ^ 0x61737365ULL));
  const std::vector<int> pron = ZeroBasedLevels(train.pronunciation);
  const std::vector<int> flu = ZeroBasedLevels(train.fluency);
  std::vector<std::size_t> order(train.Size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::vector<double> losses;
  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    rng.Shuffle(&order);
    double total = 0.0;
    for (std::size_t b = 0; b < order.size(); b += cfg.batch_size) {
      const std::size_t e = std::min(order.size(), b + cfg.batch_size);
      std::span<const std::size_t> rows(order.data() + b, e - b);
      const Matrix x = SelectRows(train.features, rows);
      std::vector<int> bp, bf;
      for (std::size_t r : rows) {
        bp.push_back(pron[r]);
        bf.push_back(flu[r]);
      }
      const auto out = net->Forward(x, true, &rng);
      const LossResult lp = SenoneCeLoss(out.pronunciation.output(), bp);
      const LossResult lf = SenoneCeLoss(out.fluency.output(), bf);
      total += lp.sum + lf.sum;
      net->Backward(out, lp.grad, lf.grad);
      net->Step(cfg.learning_rate, cfg.momentum);
    }
    losses.push_back(total / static_cast<double>(order.size()));
  }
  return losses;
}

void MetricsReport::Add(const std::string &name, double value) {
  if (!std::isfinite(value)) throw NonFiniteError("metric " + name + " is not finite");
  metrics.emplace_back(name, value);
}

const double *MetricsReport::Find(const std::string &name) const {
  for (const auto &[k, v] : metrics)
    if (k == name) return &v;
  return nullptr;
}

std::string FormatReport(const MetricsReport &report) {
  std::string out = "# fingerprint " + report.fingerprint + "\n";
  out += "# seed " + std::to_string(report.seed) + "\n";
  for (const auto &[k, v] : report.notes) out += "# " + k + " " + v + "\n";
  char buf[64];
  for (const auto &[name, value] : report.metrics) {
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    out += name + "\t" + buf + "\n";
  }
  return out;
}

MetricsReport ParseReport(const std::string &text) {
  MetricsReport r;
  bool have_fp = false, have_seed = false;
  std::istringstream is(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::string where = "report line " + std::to_string(lineno);
    if (line.empty()) throw FormatError(where + ": empty line");
    if (line[0] == '#') {
      const auto sp = line.find(' ', 2);
      if (line.size() < 3 || line[1] != ' ' || sp == std::string::npos)
        throw FormatError(where + ": malformed header");
      const std::string key = line.substr(2, sp - 2), value = line.substr(sp + 1);
      if (key == "fingerprint") {
        r.fingerprint = value;
        have_fp = true;
      } else if (key == "seed") {
        try {
          r.seed = std::stoull(value);
        } catch (const std::exception &) {
          throw FormatError(where + ": bad seed");
        }
        have_seed = true;
      } else {
        r.notes.emplace_back(key, value);
      }
      continue;
    }
    if (!have_fp || !have_seed) throw FormatError(where + ": metric before header");
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || line.find('\t', tab + 1) != std::string::npos)
      throw FormatError(where + ": expected name<TAB>value");
    const std::string value = line.substr(tab + 1);
    char *end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (value.empty() || end != value.c_str() + value.size() || !std::isfinite(v))
      throw FormatError(where + ": bad value '" + value + "'");
    r.metrics.emplace_back(line.substr(0, tab), v);
  }
  if (!have_fp || !have_seed) throw FormatError("report lacks fingerprint/seed header");
  return r;
}

void WriteReport(const MetricsReport &report, const std::string &path) {
  WriteFileBytes(path, FormatReport(report));
}

MetricsReport ReadReport(const std::string &path) { return ParseReport(ReadFileBytes(path)); }

std::string Fingerprint(const std::string &text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<std::string> RegisteredMetricNames(bool have_bat, bool have_sat) {
  std::vector<std::string> names = {"senone_err.adult.test", "senone_err.dnn.child.test"};
  for (const auto &[arm, present] : {std::pair{"bat", have_bat}, std::pair{"sat", have_sat}}) {
    if (!present) continue;
    const std::string a = arm;
    names.push_back("senone_err." + a + ".child.test");
    names.push_back("senone_err." + a + ".adult.test");
    names.push_back("disc_acc." + a + ".test");
    names.push_back("disc_conf." + a + ".test");
    names.push_back("reduction." + a + "_vs_dnn.absolute");
    names.push_back("reduction." + a + "_vs_dnn.relative");
  }
  if (have_bat && have_sat) {
    names.push_back("reduction.sat_vs_bat.absolute");
    names.push_back("reduction.sat_vs_bat.relative");
  }
  for (const char *head : {"pron", "flu"}) {
    names.push_back(std::string("assess.") + head + ".accuracy");
    names.push_back(std::string("assess.") + head + ".mse");
  }
  names.push_back("assess.constant3.mse");
  return names;
}

std::string PerSenoneCsv(const std::vector<std::string> &arms,
                         const std::vector<std::vector<double>> &errors) {
  if (arms.size() != errors.size()) throw ShapeError("PerSenoneCsv: arm count mismatch");
  std::string out = "senone";
  for (const auto &a : arms) out += "," + a;
  out += "\n";
  const std::size_t k = errors.empty() ? 0 : errors.front().size();
  char buf[64];
  for (std::size_t s = 0; s < k; ++s) {
    out += std::to_string(s);
    for (const auto &col : errors) {
      std::snprintf(buf, sizeof(buf), ",%.6f", col.at(s));
      out += buf;
    }
    out += "\n";
  }
  return out;
}

}  // namespace satadapt
