// satadapt/satadapt/network.h

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

#ifndef SATADAPT_NETWORK_H_
#define SATADAPT_NETWORK_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "satadapt/matrix.h"
#include "satadapt/rng.h"

namespace satadapt {

enum class Activation { kRectifier, kSigmoid, kIdentity, kSoftmax };

std::string_view ActivationName(Activation a);
Activation ActivationFromName(std::string_view name);

struct LayerSpec {
  std::size_t in_dim = 0;
  std::size_t out_dim = 0;
  Activation activation = Activation::kIdentity;
  /// Inverted dropout applied to this layer's output in training mode.
  double dropout_rate = 0.0;
};

/// Ordered stack of affine+activation layers.
struct NetworkSpec {
  std::vector<LayerSpec> layers;

  /// Throws ShapeError/ConfigError if consecutive dims disagree, a
  /// softmax is not last, or a dropout rate is outside [0, 1).
  void Validate() const;
  std::size_t InputDim() const { return layers.front().in_dim; }
  std::size_t OutputDim() const { return layers.back().out_dim; }
  bool HasDropout() const;
};

/// Named parameter tensors, each paired with a gradient buffer of the
/// same shape (and a momentum buffer used by SgdStep).  A frozen store
/// never has its values changed by an optimizer.
class ParameterStore {
 public:
  struct Entry {
    std::string name;
    Matrix value;
    Matrix grad;
    Matrix velocity;
  };

  /// Adds a zero-filled entry and returns its value matrix.  The reference
  /// is invalidated by the next Add.
  Matrix &Add(const std::string &name, std::size_t rows, std::size_t cols);

  Entry *Find(std::string_view name);
  const Entry *Find(std::string_view name) const;
  Entry &At(std::string_view name);
  const Entry &At(std::string_view name) const;

  std::vector<Entry> &entries() { return entries_; }
  const std::vector<Entry> &entries() const { return entries_; }

  bool frozen() const { return frozen_; }
  void set_frozen(bool f) { frozen_ = f; }

  void ZeroGrad();
  std::size_t NumParameters() const;

  /// Values/gradients concatenated in entry order.
  std::vector<double> FlatValues() const;
  std::vector<double> FlatGrads() const;
  void SetFlatValues(const std::vector<double> &values);

 private:
  std::vector<Entry> entries_;
  bool frozen_ = false;
};

class Network;

/// Cached tensors of one forward pass, consumed by Network::Backward.
class ForwardTrace {
 public:
  const Matrix &output() const { return output_; }
  bool empty() const { return owner_ == nullptr; }

 private:
  friend class Network;
  struct LayerCache {
    Matrix input;
    Matrix activation;  // post-activation, before dropout
    Matrix dropout_mask;  // empty when dropout was inactive
  };
  const Network *owner_ = nullptr;
  std::vector<LayerCache> layers_;
  Matrix output_;
};

/// Dense feedforward network.  Layer l owns parameters "l<l>.weight"
/// (in_dim x out_dim) and "l<l>.bias" (1 x out_dim); outputs are
/// computed as act(x W + b).
class Network {
 public:
  Network() = default;
  /// Weights uniform in +-sqrt(6 / (in + out)), biases zero.
  Network(NetworkSpec spec, Rng *init_rng);

  const NetworkSpec &spec() const { return spec_; }
  ParameterStore &params() { return params_; }
  const ParameterStore &params() const { return params_; }

  Matrix &Weight(std::size_t layer);
  Matrix &Bias(std::size_t layer);
  const Matrix &Weight(std::size_t layer) const;
  const Matrix &Bias(std::size_t layer) const;

  /// rng is required when train_mode is set and any layer has dropout.
  ForwardTrace Forward(const Matrix &x, bool train_mode, Rng *rng) const;

  /// Inference-mode forward pass.
  Matrix Predict(const Matrix &x) const;

  /// Accumulates parameter gradients (+=) unless the store is frozen and
  /// returns d(loss)/d(input).
  Matrix Backward(const ForwardTrace &trace, const Matrix &upstream);

 private:
  NetworkSpec spec_;
  ParameterStore params_;
};

/// velocity = momentum * velocity + grad; value -= lr * velocity; grads
/// are zeroed afterwards.  Throws FrozenError on a frozen store.
void SgdStep(ParameterStore *store, double learning_rate, double momentum);

}  // namespace satadapt

#endif  // SATADAPT_NETWORK_H_
