// satadapt/src/losses.cc

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

#include "satadapt/losses.h"

#include <cmath>
#include <string>

#include "satadapt/error.h"

namespace satadapt {

namespace {

double ClampedNegLog(double p) { return -std::log(p > kLogFloor ? p : kLogFloor); }

// d(-log max(p, floor))/dp; zero on the clamped branch.
double ClampedNegLogDeriv(double p) { return p > kLogFloor ? -1.0 / p : 0.0; }

void CheckIndicator(std::span<const int> indicator, std::size_t rows) {
  if (indicator.size() != rows)
    throw ShapeError("domain indicator length differs from row count");
  for (int v : indicator)
    if (v != kAdult && v != kChild)
      throw ConfigError("domain indicator must be 0 or 1, got " + std::to_string(v));
}

}  // namespace

LossResult SenoneCeLoss(const Matrix &posteriors, std::span<const int> labels) {
  const std::size_t rows = posteriors.NumRows(), k = posteriors.NumCols();
  if (labels.size() != rows) throw ShapeError("SenoneCeLoss: label count differs from rows");
  if (k < 2) throw ConfigError("SenoneCeLoss: need at least 2 senones");
  LossResult r;
  r.per_frame.assign(rows, 0.0);
  for (std::size_t i = 0; i < rows; ++i) {
    if (labels[i] == kNoLabel) continue;
    if (labels[i] < 0 || static_cast<std::size_t>(labels[i]) >= k)
      throw ShapeError("SenoneCeLoss: label out of range");
    r.per_frame[i] = ClampedNegLog(posteriors(i, labels[i]));
    r.sum += r.per_frame[i];
    ++r.count;
  }
  if (r.count == 0) throw ConfigError("SenoneCeLoss: no labeled frames (n = 0)");
  r.mean = r.sum / static_cast<double>(r.count);
  r.grad = Matrix(rows, k);
  const double inv_n = 1.0 / static_cast<double>(r.count);
  for (std::size_t i = 0; i < rows; ++i) {
    if (labels[i] == kNoLabel) continue;
    r.grad(i, labels[i]) = inv_n * ClampedNegLogDeriv(posteriors(i, labels[i]));
  }
  return r;
}

LossResult BinaryDomainLoss(const Matrix &disc_out, std::span<const int> indicator) {
  const std::size_t rows = disc_out.NumRows();
  if (disc_out.NumCols() != 2) throw ShapeError("BinaryDomainLoss: expected 2 columns");
  CheckIndicator(indicator, rows);
  if (rows == 0) throw ConfigError("BinaryDomainLoss: empty batch");
  LossResult r;
  r.per_frame.resize(rows);
  r.grad = Matrix(rows, 2);
  r.count = rows;
  const double inv_n = 1.0 / static_cast<double>(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    // -(1 - I) log P(a|f) - I log P(c|f); only the true-domain term survives.
    const int d = indicator[i];
    r.per_frame[i] = ClampedNegLog(disc_out(i, d));
    r.sum += r.per_frame[i];
    r.grad(i, d) = inv_n * ClampedNegLogDeriv(disc_out(i, d));
  }
  r.mean = r.sum * inv_n;
  return r;
}

LossResult SenoneAwareDomainLoss(const Matrix &disc_out,
                                 std::span<const int> indicator,
                                 const Matrix &alpha) {
  const std::size_t rows = disc_out.NumRows(), k = alpha.NumCols();
  if (alpha.NumRows() != rows)
    throw ShapeError("SenoneAwareDomainLoss: alpha row count differs");
  if (disc_out.NumCols() != 2 * k)
    throw ShapeError("SenoneAwareDomainLoss: discriminator has " +
                     std::to_string(disc_out.NumCols()) + " columns but alpha has K=" +
                     std::to_string(k));
  CheckIndicator(indicator, rows);
  if (rows == 0) throw ConfigError("SenoneAwareDomainLoss: empty batch");
  LossResult r;
  r.per_frame.resize(rows);
  r.grad = Matrix(rows, 2 * k);
  r.count = rows;
  const double inv_n = 1.0 / static_cast<double>(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    const int d = indicator[i];
    double loss = 0.0;
    for (std::size_t s = 0; s < k; ++s) {
      const double a = alpha(i, s);
      if (a == 0.0) continue;
      const std::size_t col = JointColumn(d, s, k);
      loss += a * ClampedNegLog(disc_out(i, col));
      r.grad(i, col) = inv_n * a * ClampedNegLogDeriv(disc_out(i, col));
    }
    r.per_frame[i] = loss;
    r.sum += loss;
  }
  r.mean = r.sum * inv_n;
  return r;
}

Matrix MarginalizeDomain(const Matrix &joint, std::size_t num_senones) {
  if (joint.NumCols() != 2 * num_senones)
    throw ShapeError("MarginalizeDomain: expected 2K columns");
  Matrix out(joint.NumRows(), 2);
  for (std::size_t i = 0; i < joint.NumRows(); ++i) {
    for (int d = 0; d < 2; ++d) {
      double s = 0.0;
      for (std::size_t k = 0; k < num_senones; ++k) s += joint(i, JointColumn(d, k, num_senones));
      out(i, d) = s;
    }
  }
  return out;
}

BatchLossTerms MultitaskObjective(double senone_ce_sum, std::size_t n,
                                  double domain_loss_sum, std::size_t N) {
  if (n == 0) throw ConfigError("multi-task objective needs at least one adult frame");
  if (N < n) throw ConfigError("multi-task objective: N must be >= n");
  BatchLossTerms t;
  t.n = n;
  t.N = N;
  t.senone_ce_sum = senone_ce_sum;
  t.domain_loss_sum = domain_loss_sum;
  t.senone_ce_mean = senone_ce_sum / static_cast<double>(n);
  t.domain_loss_mean = domain_loss_sum / static_cast<double>(N);
  t.objective = t.senone_ce_mean - t.domain_loss_mean;
  return t;
}

}  // namespace satadapt
