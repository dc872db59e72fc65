// satadapt/src/network.cc

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

#include "satadapt/network.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "satadapt/error.h"

namespace satadapt {

std::string_view ActivationName(Activation a) {
  switch (a) {
    case Activation::kRectifier: return "rectifier";
    case Activation::kSigmoid: return "sigmoid";
    case Activation::kIdentity: return "identity";
    case Activation::kSoftmax: return "softmax";
  }
  return "unknown";
}

Activation ActivationFromName(std::string_view name) {
  if (name == "rectifier") return Activation::kRectifier;
  if (name == "sigmoid") return Activation::kSigmoid;
  if (name == "identity") return Activation::kIdentity;
  if (name == "softmax") return Activation::kSoftmax;
  throw ConfigError("unknown activation '" + std::string(name) + "'");
}

void NetworkSpec::Validate() const {
  if (layers.empty()) throw ConfigError("network has no layers");
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const LayerSpec &ls = layers[l];
    if (ls.in_dim == 0 || ls.out_dim == 0) {
      throw ShapeError("layer " + std::to_string(l) + " has a zero dimension");
    }
    if (l > 0 && layers[l - 1].out_dim != ls.in_dim) {
      std::ostringstream os;
      os << "layer " << l << " expects " << ls.in_dim << " inputs but layer "
         << l - 1 << " produces " << layers[l - 1].out_dim;
      throw ShapeError(os.str());
    }
    if (ls.activation == Activation::kSoftmax && l + 1 != layers.size()) {
      throw ConfigError("softmax is only legal on the final layer (layer " +
                        std::to_string(l) + ")");
    }
    if (!(ls.dropout_rate >= 0.0 && ls.dropout_rate < 1.0)) {
      throw ConfigError("layer " + std::to_string(l) +
                        " dropout_rate must be in [0, 1)");
    }
  }
}

bool NetworkSpec::HasDropout() const {
  return std::any_of(layers.begin(), layers.end(),
                     [](const LayerSpec &l) { return l.dropout_rate > 0.0; });
}

Matrix &ParameterStore::Add(const std::string &name, std::size_t rows,
                            std::size_t cols) {
  if (Find(name) != nullptr) throw UsageError("duplicate parameter " + name);
  entries_.push_back(
      Entry{name, Matrix(rows, cols), Matrix(rows, cols), Matrix(rows, cols)});
  return entries_.back().value;
}

ParameterStore::Entry *ParameterStore::Find(std::string_view name) {
  for (Entry &e : entries_)
    if (e.name == name) return &e;
  return nullptr;
}

const ParameterStore::Entry *ParameterStore::Find(std::string_view name) const {
  for (const Entry &e : entries_)
    if (e.name == name) return &e;
  return nullptr;
}

ParameterStore::Entry &ParameterStore::At(std::string_view name) {
  Entry *e = Find(name);
  if (e == nullptr) throw UsageError("no parameter named " + std::string(name));
  return *e;
}

const ParameterStore::Entry &ParameterStore::At(std::string_view name) const {
  const Entry *e = Find(name);
  if (e == nullptr) throw UsageError("no parameter named " + std::string(name));
  return *e;
}

void ParameterStore::ZeroGrad() {
  for (Entry &e : entries_) e.grad.SetZero();
}

std::size_t ParameterStore::NumParameters() const {
  std::size_t n = 0;
  for (const Entry &e : entries_) n += e.value.Size();
  return n;
}

std::vector<double> ParameterStore::FlatValues() const {
  std::vector<double> out;
  out.reserve(NumParameters());
  for (const Entry &e : entries_)
    out.insert(out.end(), e.value.Data().begin(), e.value.Data().end());
  return out;
}

std::vector<double> ParameterStore::FlatGrads() const {
  std::vector<double> out;
  out.reserve(NumParameters());
  for (const Entry &e : entries_)
    out.insert(out.end(), e.grad.Data().begin(), e.grad.Data().end());
  return out;
}

void ParameterStore::SetFlatValues(const std::vector<double> &values) {
  if (values.size() != NumParameters())
    throw ShapeError("SetFlatValues: wrong parameter count");
  std::size_t pos = 0;
  for (Entry &e : entries_) {
    auto d = e.value.Data();
    std::copy(values.begin() + pos, values.begin() + pos + d.size(), d.begin());
    pos += d.size();
  }
}

namespace {

std::string WeightName(std::size_t l) { return "l" + std::to_string(l) + ".weight"; }
std::string BiasName(std::size_t l) { return "l" + std::to_string(l) + ".bias"; }

void ApplyActivation(Activation act, Matrix *m) {
  switch (act) {
    case Activation::kIdentity:
      return;
    case Activation::kRectifier:
      for (double &v : m->Data()) v = v > 0.0 ? v : 0.0;
      return;
    case Activation::kSigmoid:
      for (double &v : m->Data()) v = 1.0 / (1.0 + std::exp(-v));
      return;
    case Activation::kSoftmax:
      for (std::size_t r = 0; r < m->NumRows(); ++r) {
        auto row = m->Row(r);
        const double mx = *std::max_element(row.begin(), row.end());
        double sum = 0.0;
        for (double &v : row) {
          v = std::exp(v - mx);
          sum += v;
        }
        for (double &v : row) v /= sum;
      }
      return;
  }
}

// Converts d(loss)/d(activation) into d(loss)/d(pre-activation) in place.
void ActivationBackward(Activation act, const Matrix &y, Matrix *g) {
  auto gd = g->Data();
  auto yd = y.Data();
  switch (act) {
    case Activation::kIdentity:
      return;
    case Activation::kRectifier:
      for (std::size_t i = 0; i < gd.size(); ++i)
        if (yd[i] <= 0.0) gd[i] = 0.0;
      return;
    case Activation::kSigmoid:
      for (std::size_t i = 0; i < gd.size(); ++i) gd[i] *= yd[i] * (1.0 - yd[i]);
      return;
    case Activation::kSoftmax:
      for (std::size_t r = 0; r < g->NumRows(); ++r) {
        auto gr = g->Row(r);
        auto pr = y.Row(r);
        double dot = 0.0;
        for (std::size_t j = 0; j < gr.size(); ++j) dot += gr[j] * pr[j];
        for (std::size_t j = 0; j < gr.size(); ++j) gr[j] = pr[j] * (gr[j] - dot);
      }
      return;
  }
}

}  // namespace

Network::Network(NetworkSpec spec, Rng *init_rng) : spec_(std::move(spec)) {
  spec_.Validate();
  for (std::size_t l = 0; l < spec_.layers.size(); ++l) {
    const LayerSpec &ls = spec_.layers[l];
    params_.Add(WeightName(l), ls.in_dim, ls.out_dim);
    params_.Add(BiasName(l), 1, ls.out_dim);
    Matrix &w = Weight(l);
    const double bound =
        std::sqrt(6.0 / static_cast<double>(ls.in_dim + ls.out_dim));
    if (init_rng != nullptr) {
      for (double &v : w.Data()) v = init_rng->Uniform(-bound, bound);
    }
  }
}

Matrix &Network::Weight(std::size_t layer) { return params_.At(WeightName(layer)).value; }
Matrix &Network::Bias(std::size_t layer) { return params_.At(BiasName(layer)).value; }
const Matrix &Network::Weight(std::size_t layer) const {
  return params_.At(WeightName(layer)).value;
}
const Matrix &Network::Bias(std::size_t layer) const {
  return params_.At(BiasName(layer)).value;
}

ForwardTrace Network::Forward(const Matrix &x, bool train_mode, Rng *rng) const {
  if (spec_.layers.empty()) throw UsageError("Forward on an empty network");
  if (x.NumCols() != spec_.InputDim()) {
    std::ostringstream os;
    os << "layer 0 expects " << spec_.InputDim() << " inputs, got " << x.NumCols();
    throw ShapeError(os.str());
  }
  if (!x.AllFinite()) throw NonFiniteError("Forward: input contains NaN or Inf");
  const bool use_dropout = train_mode && spec_.HasDropout();
  if (use_dropout && rng == nullptr)
    throw UsageError("Forward: dropout in train mode requires an rng");

  ForwardTrace trace;
  trace.owner_ = this;
  trace.layers_.resize(spec_.layers.size());
  const Matrix *cur = &x;
  Matrix dropped;
  for (std::size_t l = 0; l < spec_.layers.size(); ++l) {
    const LayerSpec &ls = spec_.layers[l];
    auto &cache = trace.layers_[l];
    cache.input = *cur;
    Matrix y = MatMul(*cur, Weight(l));
    const Matrix &b = Bias(l);
    for (std::size_t r = 0; r < y.NumRows(); ++r) {
      auto row = y.Row(r);
      for (std::size_t c = 0; c < row.size(); ++c) row[c] += b(0, c);
    }
    ApplyActivation(ls.activation, &y);
    cache.activation = std::move(y);
    if (use_dropout && ls.dropout_rate > 0.0) {
      const double keep_scale = 1.0 / (1.0 - ls.dropout_rate);
      cache.dropout_mask = Matrix(cache.activation.NumRows(), cache.activation.NumCols());
      dropped = cache.activation;
      auto md = cache.dropout_mask.Data();
      auto dd = dropped.Data();
      for (std::size_t i = 0; i < md.size(); ++i) {
        md[i] = rng->Uniform() < ls.dropout_rate ? 0.0 : keep_scale;
        dd[i] *= md[i];
      }
      cur = &dropped;
      if (l + 1 == spec_.layers.size()) trace.output_ = dropped;
    } else {
      cur = &cache.activation;
      if (l + 1 == spec_.layers.size()) trace.output_ = cache.activation;
    }
    // Next layer copies *cur into its cache before `dropped` is reused.
  }
  return trace;
}

Matrix Network::Predict(const Matrix &x) const {
  ForwardTrace t = Forward(x, false, nullptr);
  return t.output();
}

Matrix Network::Backward(const ForwardTrace &trace, const Matrix &upstream) {
  if (trace.empty()) throw UsageError("Backward called before Forward");
  if (trace.owner_ != this)
    throw UsageError("Backward: trace was produced by a different network");
  if (!upstream.SameShape(trace.output_)) {
    std::ostringstream os;
    os << "Backward: upstream gradient is " << upstream.NumRows() << "x"
       << upstream.NumCols() << ", output is " << trace.output_.NumRows() << "x"
       << trace.output_.NumCols();
    throw ShapeError(os.str());
  }
  Matrix g = upstream;
  for (std::size_t l = spec_.layers.size(); l-- > 0;) {
    const LayerSpec &ls = spec_.layers[l];
    const auto &cache = trace.layers_[l];
    if (!cache.dropout_mask.Empty()) {
      auto gd = g.Data();
      auto md = cache.dropout_mask.Data();
      for (std::size_t i = 0; i < gd.size(); ++i) gd[i] *= md[i];
    }
    ActivationBackward(ls.activation, cache.activation, &g);
    if (!params_.frozen()) {
      params_.At(WeightName(l)).grad += MatMulTransA(cache.input, g);
      Matrix &bg = params_.At(BiasName(l)).grad;
      for (std::size_t r = 0; r < g.NumRows(); ++r) {
        auto row = g.Row(r);
        for (std::size_t c = 0; c < row.size(); ++c) bg(0, c) += row[c];
      }
    }
    g = MatMulTransB(g, Weight(l));
  }
  return g;
}

void SgdStep(ParameterStore *store, double learning_rate, double momentum) {
  if (store->frozen())
    throw FrozenError("SgdStep on a frozen parameter store");
  if (!(learning_rate >= 0.0)) throw ConfigError("learning rate must be >= 0");
  if (!(momentum >= 0.0 && momentum < 1.0))
    throw ConfigError("momentum must be in [0, 1)");
  for (auto &e : store->entries()) {
    auto v = e.velocity.Data();
    auto g = e.grad.Data();
    auto w = e.value.Data();
    for (std::size_t i = 0; i < w.size(); ++i) {
      v[i] = momentum * v[i] + g[i];
      w[i] -= learning_rate * v[i];
    }
    e.grad.SetZero();
  }
}

}  // namespace satadapt
