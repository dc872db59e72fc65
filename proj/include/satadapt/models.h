// satadapt/satadapt/models.h

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

#ifndef SATADAPT_MODELS_H_
#define SATADAPT_MODELS_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "satadapt/matrix.h"
#include "satadapt/network.h"
#include "satadapt/param-io.h"
#include "satadapt/rng.h"

namespace satadapt {

/// Adult acoustic model: stacked features -> softmax over K senones.
/// After pretraining the parameters are frozen for good.
class AdultAcousticModel {
 public:
  AdultAcousticModel() = default;
  AdultAcousticModel(std::size_t input_dim, const std::vector<std::size_t> &hidden,
                     std::size_t num_senones, Rng *init_rng, double dropout = 0.0);

  std::size_t input_dim() const { return net_.spec().InputDim(); }
  std::size_t num_senones() const { return net_.spec().OutputDim(); }
  const std::vector<std::size_t> &hidden_dims() const { return hidden_; }
  bool frozen() const { return net_.params().frozen(); }
  void Freeze() { net_.params().set_frozen(true); }

  Network &network() { return net_; }
  const Network &network() const { return net_; }

 private:
  std::vector<std::size_t> hidden_;
  Network net_;
};

/// K >= 2 and all dims positive; the final layer is a softmax over K.
AdultAcousticModel BuildAdultAm(std::size_t input_dim,
                                const std::vector<std::size_t> &hidden,
                                std::size_t num_senones, Rng *init_rng,
                                double dropout = 0.0);

/// Residual feature transform: out = x + g(x).  The last layer of g is
/// zero-initialized so a fresh adapter is the identity map.
class AdaptationNetwork {
 public:
  struct Trace {
    ForwardTrace residual;
    Matrix output;
  };

  AdaptationNetwork() = default;
  AdaptationNetwork(std::size_t dim, const std::vector<std::size_t> &hidden,
                    Rng *init_rng);

  std::size_t dim() const { return net_.spec().InputDim(); }
  const std::vector<std::size_t> &hidden_dims() const { return hidden_; }
  Network &residual() { return net_; }
  const Network &residual() const { return net_; }
  ParameterStore &params() { return net_.params(); }
  const ParameterStore &params() const { return net_.params(); }

  Trace Forward(const Matrix &x, bool train_mode, Rng *rng) const;
  Matrix Apply(const Matrix &x) const;
  /// Accumulates gradients of g and returns d(loss)/dx (identity path
  /// included).
  Matrix Backward(const Trace &trace, const Matrix &upstream);

 private:
  std::vector<std::size_t> hidden_;
  Network net_;
};

enum class DiscriminatorMode { kBinary, kSenoneAware };

std::string_view DiscriminatorModeName(DiscriminatorMode m);
DiscriminatorMode DiscriminatorModeFromName(std::string_view name);

/// Adversary over adapted features.  Binary mode outputs (P(adult),
/// P(child)); senone-aware mode outputs a joint softmax over 2K
/// (domain, senone) classes, column domain * K + k.
class DomainDiscriminator {
 public:
  DomainDiscriminator() = default;
  DomainDiscriminator(DiscriminatorMode mode, std::size_t input_dim,
                      const std::vector<std::size_t> &hidden, std::size_t num_senones,
                      Rng *init_rng);

  DiscriminatorMode mode() const { return mode_; }
  std::size_t num_senones() const { return num_senones_; }
  std::size_t output_dim() const { return net_.spec().OutputDim(); }
  const std::vector<std::size_t> &hidden_dims() const { return hidden_; }
  Network &network() { return net_; }
  const Network &network() const { return net_; }
  ParameterStore &params() { return net_.params(); }

  /// (P(adult), P(child)) per frame, marginalizing the joint output in
  /// senone-aware mode.
  Matrix DomainPosteriors(const Matrix &features) const;

 private:
  DiscriminatorMode mode_ = DiscriminatorMode::kBinary;
  std::size_t num_senones_ = 0;
  std::vector<std::size_t> hidden_;
  Network net_;
};

/// Two-head assessment network: a shared rectifier trunk feeding two
/// independent 5-way softmax heads (pronunciation, fluency).
class AssessmentNetwork {
 public:
  struct Output {
    ForwardTrace trunk;
    ForwardTrace pronunciation;
    ForwardTrace fluency;
  };

  AssessmentNetwork() = default;
  AssessmentNetwork(std::size_t input_dim, const std::vector<std::size_t> &trunk,
                    std::size_t num_levels, Rng *init_rng);

  Output Forward(const Matrix &x, bool train_mode, Rng *rng) const;
  /// Accumulates gradients from both heads into the shared trunk.
  void Backward(const Output &out, const Matrix &pron_grad, const Matrix &flu_grad);
  void Step(double lr, double momentum);

  Network &trunk() { return trunk_; }
  Network &pronunciation_head() { return pron_; }
  Network &fluency_head() { return flu_; }
  const Network &trunk() const { return trunk_; }

 private:
  Network trunk_;
  Network pron_;
  Network flu_;
};

/// Full-size shapes: 1,320-dim input (11 stacked 40-dim filter-bank
/// frames * 3), six hidden layers of 2,048; assessment trunk 30 -> 3x128
/// with two 5-way heads.
inline constexpr std::size_t kFullInputDim = 1320;
inline const std::vector<std::size_t> kFullAmHidden(6, 2048);
inline constexpr std::size_t kAssessInputDim = 30;
inline const std::vector<std::size_t> kAssessTrunk = {128, 128, 128};
inline constexpr std::size_t kAssessLevels = 5;

/// Posteriors of the frozen AM on x, or on adapter(x) when apply_adapter.
struct ComposedForward {
  AdaptationNetwork::Trace adapter;
  ForwardTrace am;
  const Matrix &posteriors() const { return am.output(); }
  const Matrix &features() const { return adapter.output; }
};

/// Throws FrozenError if the acoustic model is not frozen.
ComposedForward ComposeAdaptedPosteriors(const AdaptationNetwork &adapter,
                                         const AdultAcousticModel &am, const Matrix &x,
                                         bool apply_adapter, bool train_mode = false,
                                         Rng *rng = nullptr);

/// Backpropagates d(loss)/d(posteriors) through the frozen AM into the
/// adapter.  Returns d(loss)/d(adapted features).
Matrix BackwardThroughAm(AdultAcousticModel *am, const ComposedForward &fwd,
                         const Matrix &posterior_grad);

/// Senone posteriors used as loss weights; a plain value copy, so nothing
/// flows back through it.  Requires a frozen AM.
Matrix ExtractSenonePosteriors(const AdultAcousticModel &am, const Matrix &features);

/// Discriminator forward pass, with a check that the output width matches
/// the mode.
ForwardTrace Discriminate(const DomainDiscriminator &disc, const Matrix &features,
                          bool train_mode = false, Rng *rng = nullptr);

// Bundle save/load.  Each bundle manifest records kind, dims and frozen
// state next to the parameter container.
void SaveAdultAm(const AdultAcousticModel &am, const std::string &path);
AdultAcousticModel LoadAdultAm(const std::string &path);
void SaveAdapter(const AdaptationNetwork &adapter, const std::string &path);
AdaptationNetwork LoadAdapter(const std::string &path);
void SaveDiscriminator(const DomainDiscriminator &disc, const std::string &path);
DomainDiscriminator LoadDiscriminator(const std::string &path);

std::string JoinDims(const std::vector<std::size_t> &dims);
std::vector<std::size_t> ParseDims(const std::string &text);

}  // namespace satadapt

#endif  // SATADAPT_MODELS_H_
