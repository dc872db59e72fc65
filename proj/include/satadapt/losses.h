// satadapt/satadapt/losses.h

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

#ifndef SATADAPT_LOSSES_H_
#define SATADAPT_LOSSES_H_

#include <cstddef>
#include <span>
#include <vector>

#include "satadapt/matrix.h"

namespace satadapt {

/// Probabilities are clamped to this floor before taking logs, so every
/// per-frame loss lies in [0, -log(kLogFloor)].
inline constexpr double kLogFloor = 1e-12;

/// Senone label of a frame whose label is unavailable (child frames).
inline constexpr int kNoLabel = -1;

/// Domain indicator: 0 for adult frames, 1 for child frames.
inline constexpr int kAdult = 0;
inline constexpr int kChild = 1;

/// Value and gradient of an averaged per-frame loss.  `grad` is the
/// derivative of `mean` with respect to the probability matrix that was
/// scored, and `per_frame` has one entry per row (zero for rows outside
/// the mask).
struct LossResult {
  std::vector<double> per_frame;
  double sum = 0.0;
  std::size_t count = 0;
  double mean = 0.0;
  Matrix grad;
};

/// Mean of -log p[label] over frames whose label is not kNoLabel.  Throws
/// ConfigError when no frame is labeled, since the average is undefined.
LossResult SenoneCeLoss(const Matrix &posteriors, std::span<const int> labels);

/// Binary adversary loss: -log P(true domain | f) per frame, averaged over
/// all N frames.  Column 0 is adult, column 1 is child.
LossResult BinaryDomainLoss(const Matrix &disc_out, std::span<const int> indicator);

/// Senone-aware adversary loss over a joint (domain, senone) softmax with
/// 2K columns laid out as domain * K + k.  Per frame:
///   -sum_k alpha[k] * log P(true domain, sen = k | f)
/// alpha rows are treated as constants.
LossResult SenoneAwareDomainLoss(const Matrix &disc_out,
                                 std::span<const int> indicator,
                                 const Matrix &alpha);

/// Column of the joint discriminator output for (domain, senone).
inline std::size_t JointColumn(int domain, std::size_t senone, std::size_t num_senones) {
  return static_cast<std::size_t>(domain) * num_senones + senone;
}

/// Sums the joint (domain, senone) output over senones, giving N x 2.
Matrix MarginalizeDomain(const Matrix &joint, std::size_t num_senones);

struct BatchLossTerms {
  std::size_t n = 0;  // adult (labeled) frames
  std::size_t N = 0;  // all frames
  double senone_ce_sum = 0.0;
  double domain_loss_sum = 0.0;
  double senone_ce_mean = 0.0;
  double domain_loss_mean = 0.0;
  /// E = senone_ce_sum / n - domain_loss_sum / N
  double objective = 0.0;
};

/// Combines the two sums with their separate denominators.  The adapter
/// minimizes the result and the discriminator maximizes it.
BatchLossTerms MultitaskObjective(double senone_ce_sum, std::size_t n,
                                  double domain_loss_sum, std::size_t N);

}  // namespace satadapt

#endif  // SATADAPT_LOSSES_H_
