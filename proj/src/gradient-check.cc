// satadapt/src/gradient-check.cc

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

#include "satadapt/gradient-check.h"

#include <algorithm>
#include <cmath>

#include "satadapt/error.h"

namespace satadapt {

std::vector<double> CentralDifference(const std::function<double()> &loss,
                                      std::span<double> params, double h) {
  if (!(h > 0.0)) throw ConfigError("finite-difference step must be positive");
  std::vector<double> grad(params.size());
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double saved = params[i];
    params[i] = saved + h;
    const double up = loss();
    params[i] = saved - h;
    const double down = loss();
    params[i] = saved;
    grad[i] = (up - down) / (2.0 * h);
  }
  return grad;
}

Matrix FiniteDiffGradient(Network *net, const Matrix &x,
                          const std::function<double(const Matrix &)> &loss,
                          double h) {
  Matrix out(1, net->params().NumParameters());
  std::size_t pos = 0;
  for (auto &entry : net->params().entries()) {
    auto values = entry.value.Data();
    std::vector<double> g = CentralDifference(
        [&] { return loss(net->Predict(x)); }, values, h);
    std::copy(g.begin(), g.end(), out.Data().begin() + pos);
    pos += g.size();
  }
  return out;
}

Matrix FiniteDiffInputGradient(const Network &net, const Matrix &x,
                               const std::function<double(const Matrix &)> &loss,
                               double h) {
  Matrix probe = x;
  std::vector<double> g = CentralDifference(
      [&] { return loss(net.Predict(probe)); }, probe.Data(), h);
  Matrix out(x.NumRows(), x.NumCols());
  std::copy(g.begin(), g.end(), out.Data().begin());
  return out;
}

double MaxRelativeError(std::span<const double> a, std::span<const double> b,
                        double floor) {
  if (a.size() != b.size()) throw ShapeError("MaxRelativeError: size mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double scale = std::max({std::fabs(a[i]), std::fabs(b[i]), floor});
    worst = std::max(worst, std::fabs(a[i] - b[i]) / scale);
  }
  return worst;
}

}  // namespace satadapt
