// satadapt/src/models.cc

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

#include "satadapt/models.h"

#include <sstream>

#include "satadapt/error.h"
#include "satadapt/losses.h"

namespace satadapt {

namespace {

NetworkSpec StackSpec(std::size_t in, const std::vector<std::size_t> &hidden,
                      std::size_t out, Activation hidden_act, Activation out_act,
                      double dropout) {
  NetworkSpec spec;
  std::size_t prev = in;
  for (std::size_t h : hidden) {
    spec.layers.push_back({prev, h, hidden_act, dropout});
    prev = h;
  }
  spec.layers.push_back({prev, out, out_act, 0.0});
  return spec;
}

std::string Get(const Manifest &m, const std::string &key) {
  auto it = m.find(key);
  if (it == m.end()) throw FormatError("bundle manifest lacks '" + key + "'");
  return it->second;
}

void ExpectKind(const Manifest &m, const std::string &kind, const std::string &path) {
  if (Get(m, "kind") != kind)
    throw FormatError(path + " is a '" + Get(m, "kind") + "' bundle, expected '" +
                      kind + "'");
}

std::size_t GetCount(const Manifest &m, const std::string &key) {
  const std::string v = Get(m, key);
  try {
    return static_cast<std::size_t>(std::stoull(v));
  } catch (const std::exception &) {
    throw FormatError("bundle manifest: bad integer for " + key);
  }
}

}  // namespace

std::string JoinDims(const std::vector<std::size_t> &dims) {
  std::string out;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(dims[i]);
  }
  return out;
}

std::vector<std::size_t> ParseDims(const std::string &text) {
  std::vector<std::size_t> dims;
  std::istringstream is(text);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    if (tok.empty()) continue;
    try {
      std::size_t used = 0;
      const long long v = std::stoll(tok, &used);
      if (used != tok.size() || v <= 0) throw std::invalid_argument(tok);
      dims.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception &) {
      throw ConfigError("bad dimension list '" + text + "'");
    }
  }
  return dims;
}

AdultAcousticModel::AdultAcousticModel(std::size_t input_dim,
                                       const std::vector<std::size_t> &hidden,
                                       std::size_t num_senones, Rng *init_rng,
                                       double dropout)
    : hidden_(hidden),
      net_(StackSpec(input_dim, hidden, num_senones, Activation::kRectifier,
                     Activation::kSoftmax, dropout),
           init_rng) {}

AdultAcousticModel BuildAdultAm(std::size_t input_dim,
                                const std::vector<std::size_t> &hidden,
                                std::size_t num_senones, Rng *init_rng, double dropout) {
  if (num_senones < 2) throw ConfigError("acoustic model needs K >= 2 senones");
  if (input_dim == 0) throw ConfigError("acoustic model input dim must be positive");
  for (std::size_t h : hidden)
    if (h == 0) throw ConfigError("acoustic model hidden dims must be positive");
  return AdultAcousticModel(input_dim, hidden, num_senones, init_rng, dropout);
}

AdaptationNetwork::AdaptationNetwork(std::size_t dim,
                                     const std::vector<std::size_t> &hidden,
                                     Rng *init_rng)
    : hidden_(hidden),
      net_(StackSpec(dim, hidden, dim, Activation::kRectifier, Activation::kIdentity,
                     0.0),
           init_rng) {
  const std::size_t last = net_.spec().layers.size() - 1;
  net_.Weight(last).SetZero();
  net_.Bias(last).SetZero();
}

AdaptationNetwork::Trace AdaptationNetwork::Forward(const Matrix &x, bool train_mode,
                                                    Rng *rng) const {
  Trace t;
  t.residual = net_.Forward(x, train_mode, rng);
  t.output = x;
  t.output += t.residual.output();
  return t;
}

Matrix AdaptationNetwork::Apply(const Matrix &x) const {
  Matrix out = x;
  out += net_.Predict(x);
  return out;
}

Matrix AdaptationNetwork::Backward(const Trace &trace, const Matrix &upstream) {
  Matrix g = net_.Backward(trace.residual, upstream);
  g += upstream;
  return g;
}

std::string_view DiscriminatorModeName(DiscriminatorMode m) {
  return m == DiscriminatorMode::kBinary ? "binary" : "senone_aware";
}

DiscriminatorMode DiscriminatorModeFromName(std::string_view name) {
  if (name == "binary" || name == "bat") return DiscriminatorMode::kBinary;
  if (name == "senone_aware" || name == "sat") return DiscriminatorMode::kSenoneAware;
  throw ConfigError("unknown discriminator mode '" + std::string(name) + "'");
}

DomainDiscriminator::DomainDiscriminator(DiscriminatorMode mode, std::size_t input_dim,
                                         const std::vector<std::size_t> &hidden,
                                         std::size_t num_senones, Rng *init_rng)
    : mode_(mode),
      num_senones_(num_senones),
      hidden_(hidden),
      net_(StackSpec(input_dim, hidden,
                     mode == DiscriminatorMode::kBinary ? 2 : 2 * num_senones,
                     Activation::kRectifier, Activation::kSoftmax, 0.0),
           init_rng) {
  if (num_senones == 0) throw ConfigError("discriminator needs K >= 1");
}

Matrix DomainDiscriminator::DomainPosteriors(const Matrix &features) const {
  Matrix out = net_.Predict(features);
  if (mode_ == DiscriminatorMode::kSenoneAware) return MarginalizeDomain(out, num_senones_);
  return out;
}

AssessmentNetwork::AssessmentNetwork(std::size_t input_dim,
                                     const std::vector<std::size_t> &trunk,
                                     std::size_t num_levels, Rng *init_rng) {
  if (trunk.empty()) throw ConfigError("assessment trunk needs at least one layer");
  NetworkSpec spec;
  std::size_t prev = input_dim;
  for (std::size_t h : trunk) {
    spec.layers.push_back({prev, h, Activation::kRectifier, 0.0});
    prev = h;
  }
  trunk_ = Network(spec, init_rng);
  NetworkSpec head;
  head.layers.push_back({prev, num_levels, Activation::kSoftmax, 0.0});
  pron_ = Network(head, init_rng);
  flu_ = Network(head, init_rng);
}

AssessmentNetwork::Output AssessmentNetwork::Forward(const Matrix &x, bool train_mode,
                                                     Rng *rng) const {
  Output out;
  out.trunk = trunk_.Forward(x, train_mode, rng);
  out.pronunciation = pron_.Forward(out.trunk.output(), train_mode, rng);
  out.fluency = flu_.Forward(out.trunk.output(), train_mode, rng);
  return out;
}

void AssessmentNetwork::Backward(const Output &out, const Matrix &pron_grad,
                                 const Matrix &flu_grad) {
  Matrix g = pron_.Backward(out.pronunciation, pron_grad);
  g += flu_.Backward(out.fluency, flu_grad);
  trunk_.Backward(out.trunk, g);
}

void AssessmentNetwork::Step(double lr, double momentum) {
  SgdStep(&trunk_.params(), lr, momentum);
  SgdStep(&pron_.params(), lr, momentum);
  SgdStep(&flu_.params(), lr, momentum);
}

ComposedForward ComposeAdaptedPosteriors(const AdaptationNetwork &adapter,
                                         const AdultAcousticModel &am, const Matrix &x,
                                         bool apply_adapter, bool train_mode, Rng *rng) {
  if (!am.frozen())
    throw FrozenError("adapted posteriors require a frozen adult acoustic model");
  if (x.NumCols() != am.input_dim())
    throw ShapeError("features do not match the acoustic model input dim");
  ComposedForward out;
  if (apply_adapter) {
    if (adapter.dim() != am.input_dim())
      throw ShapeError("adapter dim differs from acoustic model input dim");
    out.adapter = adapter.Forward(x, train_mode, rng);
  } else {
    out.adapter.output = x;
  }
  out.am = am.network().Forward(out.adapter.output, false, nullptr);
  return out;
}

Matrix BackwardThroughAm(AdultAcousticModel *am, const ComposedForward &fwd,
                         const Matrix &posterior_grad) {
  if (!am->frozen()) throw FrozenError("BackwardThroughAm on an unfrozen model");
  return am->network().Backward(fwd.am, posterior_grad);
}

Matrix ExtractSenonePosteriors(const AdultAcousticModel &am, const Matrix &features) {
  if (!am.frozen())
    throw FrozenError("senone posteriors must come from a frozen acoustic model");
  return am.network().Predict(features);
}

ForwardTrace Discriminate(const DomainDiscriminator &disc, const Matrix &features,
                          bool train_mode, Rng *rng) {
  ForwardTrace t = disc.network().Forward(features, train_mode, rng);
  const std::size_t want =
      disc.mode() == DiscriminatorMode::kBinary ? 2 : 2 * disc.num_senones();
  if (t.output().NumCols() != want)
    throw ShapeError("discriminator output width does not match its mode");
  return t;
}

void SaveAdultAm(const AdultAcousticModel &am, const std::string &path) {
  Manifest m{{"kind", "adult_am"},
             {"input_dim", std::to_string(am.input_dim())},
             {"hidden", JoinDims(am.hidden_dims())},
             {"num_senones", std::to_string(am.num_senones())},
             {"frozen", am.frozen() ? "1" : "0"}};
  WriteBundle(path, m, am.network().params());
}

AdultAcousticModel LoadAdultAm(const std::string &path) {
  std::string bytes;
  Manifest m = ReadBundleManifest(path, &bytes);
  ExpectKind(m, "adult_am", path);
  AdultAcousticModel am = BuildAdultAm(GetCount(m, "input_dim"), ParseDims(Get(m, "hidden")),
                                       GetCount(m, "num_senones"), nullptr);
  DeserializeParameters(bytes, &am.network().params());
  if (Get(m, "frozen") == "1") am.Freeze();
  return am;
}

void SaveAdapter(const AdaptationNetwork &adapter, const std::string &path) {
  Manifest m{{"kind", "adapter"},
             {"dim", std::to_string(adapter.dim())},
             {"hidden", JoinDims(adapter.hidden_dims())},
             {"frozen", adapter.params().frozen() ? "1" : "0"}};
  WriteBundle(path, m, adapter.params());
}

AdaptationNetwork LoadAdapter(const std::string &path) {
  std::string bytes;
  Manifest m = ReadBundleManifest(path, &bytes);
  ExpectKind(m, "adapter", path);
  AdaptationNetwork a(GetCount(m, "dim"), ParseDims(Get(m, "hidden")), nullptr);
  DeserializeParameters(bytes, &a.params());
  return a;
}

void SaveDiscriminator(const DomainDiscriminator &disc, const std::string &path) {
  Manifest m{{"kind", "discriminator"},
             {"mode", std::string(DiscriminatorModeName(disc.mode()))},
             {"input_dim", std::to_string(disc.network().spec().InputDim())},
             {"hidden", JoinDims(disc.hidden_dims())},
             {"num_senones", std::to_string(disc.num_senones())},
             {"frozen", "0"}};
  WriteBundle(path, m, disc.network().params());
}

DomainDiscriminator LoadDiscriminator(const std::string &path) {
  std::string bytes;
  Manifest m = ReadBundleManifest(path, &bytes);
  ExpectKind(m, "discriminator", path);
  DomainDiscriminator d(DiscriminatorModeFromName(Get(m, "mode")), GetCount(m, "input_dim"),
                        ParseDims(Get(m, "hidden")), GetCount(m, "num_senones"), nullptr);
  DeserializeParameters(bytes, &d.params());
  return d;
}

}  // namespace satadapt
