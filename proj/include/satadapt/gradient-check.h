// satadapt/satadapt/gradient-check.h

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

#ifndef SATADAPT_GRADIENT_CHECK_H_
#define SATADAPT_GRADIENT_CHECK_H_

#include <functional>
#include <span>
#include <vector>

#include "satadapt/matrix.h"
#include "satadapt/network.h"

namespace satadapt {

/// Central differences (L(p+h) - L(p-h)) / 2h for every entry of
/// `params`.  `loss` is re-evaluated after each perturbation and must read
/// the perturbed values through whatever alias the caller set up.
std::vector<double> CentralDifference(const std::function<double()> &loss,
                                      std::span<double> params, double h);

/// Finite-difference gradient of loss(net(x)) with respect to every
/// parameter of `net`, flattened in store order as a 1 x P matrix.
/// Forward passes run in inference mode, so dropout is disabled.
Matrix FiniteDiffGradient(Network *net, const Matrix &x,
                          const std::function<double(const Matrix &)> &loss,
                          double h);

/// Finite-difference gradient with respect to the input matrix itself.
Matrix FiniteDiffInputGradient(const Network &net, const Matrix &x,
                               const std::function<double(const Matrix &)> &loss,
                               double h);

/// max_i |a_i - b_i| / max(|a_i|, |b_i|, floor).
double MaxRelativeError(std::span<const double> a, std::span<const double> b,
                        double floor = 1e-8);

}  // namespace satadapt

#endif  // SATADAPT_GRADIENT_CHECK_H_
