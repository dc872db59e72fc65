// satadapt/tests/losses-test.cc

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

#include <cmath>
#include <vector>

#include "doctest.h"
#include "satadapt/error.h"
#include "satadapt/gradient-check.h"
#include "satadapt/losses.h"
#include "test-util.h"

namespace satadapt {
namespace {

using testing::RandomProbRows;

double NaiveNegLog(double p) { return -std::log(std::max(p, 1e-12)); }

double NaiveCe(const Matrix &p, const std::vector<int> &labels) {
  double s = 0.0;
  int n = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0) continue;
    s += NaiveNegLog(p(i, labels[i]));
    ++n;
  }
  return s / n;
}

double NaiveBinary(const Matrix &p, const std::vector<int> &ind) {
  double s = 0.0;
  for (std::size_t i = 0; i < ind.size(); ++i) {
    const double ia = ind[i] == 0 ? 1.0 : 0.0;
    const double ic = 1.0 - ia;
    s += ia * NaiveNegLog(p(i, 0)) + ic * NaiveNegLog(p(i, 1));
  }
  return s / static_cast<double>(ind.size());
}

double NaiveSenoneAware(const Matrix &p, const std::vector<int> &ind, const Matrix &alpha) {
  const std::size_t k = alpha.NumCols();
  double s = 0.0;
  for (std::size_t i = 0; i < ind.size(); ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const double ia = ind[i] == 0 ? 1.0 : 0.0;
      s -= alpha(i, j) * (ia * std::log(std::max(p(i, j), 1e-12)) +
                          (1.0 - ia) * std::log(std::max(p(i, k + j), 1e-12)));
    }
  }
  return s / static_cast<double>(ind.size());
}

std::vector<int> RandomIndicator(std::size_t n, Rng *rng) {
  std::vector<int> v(n);
  for (int &d : v) d = static_cast<int>(rng->UniformInt(2));
  v[0] = 0;
  return v;
}

}  // namespace

TEST_CASE("senone cross-entropy worked example") {
  Matrix p = Matrix::FromRows({{0.7, 0.2, 0.1}, {0.1, 0.1, 0.8}, {0.3, 0.3, 0.4}});
  std::vector<int> labels = {0, 2, kNoLabel};
  LossResult r = SenoneCeLoss(p, labels);
  CHECK(r.count == 2);
  CHECK(r.mean == doctest::Approx((-std::log(0.7) - std::log(0.8)) / 2).epsilon(1e-14));
  CHECK(r.per_frame[2] == 0.0);
  CHECK(r.grad(0, 0) == doctest::Approx(-1.0 / (2 * 0.7)));
  CHECK(r.grad(2, 2) == 0.0);
}

TEST_CASE("binary domain loss worked example") {
  Matrix p = Matrix::FromRows({{0.9, 0.1}, {0.25, 0.75}});
  std::vector<int> ind = {kAdult, kChild};
  LossResult r = BinaryDomainLoss(p, ind);
  CHECK(r.sum == doctest::Approx(-std::log(0.9) - std::log(0.75)).epsilon(1e-14));
  CHECK(r.mean == doctest::Approx(r.sum / 2));
}

TEST_CASE("hand-evaluated loss values") {
  std::vector<int> labels = {0, 1};
  Matrix p = Matrix::FromRows({{0.5, 0.5}, {0.75, 0.25}});
  CHECK(SenoneCeLoss(p, labels).mean == doctest::Approx(1.039721).epsilon(1e-6));
  Matrix u(3, 4, 0.25);
  std::vector<int> three = {0, 1, 3};
  CHECK(SenoneCeLoss(u, three).mean == doctest::Approx(1.386294).epsilon(1e-6));

  std::vector<int> child = {kChild};
  CHECK(BinaryDomainLoss(Matrix::FromRows({{0.75, 0.25}}), child).mean ==
        doctest::Approx(1.386294).epsilon(1e-6));
  std::vector<int> adult = {kAdult};
  CHECK(BinaryDomainLoss(Matrix::FromRows({{1.0, 0.0}}), adult).mean == 0.0);

  Matrix joint = Matrix::FromRows({{0.4, 0.1, 0.3, 0.2}});
  Matrix alpha = Matrix::FromRows({{0.7, 0.3}});
  CHECK(SenoneAwareDomainLoss(joint, adult, alpha).mean ==
        doctest::Approx(1.332179).epsilon(1e-6));
  Matrix one_hot = Matrix::FromRows({{0.0, 1.0}});
  CHECK(SenoneAwareDomainLoss(joint, child, one_hot).mean ==
        doctest::Approx(-std::log(0.2)).epsilon(1e-14));

  CHECK(MultitaskObjective(0.7, 1, 1.0, 2).objective == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(MultitaskObjective(1.4, 1, 2.0, 2).objective == doctest::Approx(0.4).epsilon(1e-14));
}

TEST_CASE("uniform discriminator output costs log 2 per frame") {
  Matrix p(4, 2, 0.5);
  std::vector<int> ind = {0, 1, 1, 0};
  CHECK(BinaryDomainLoss(p, ind).mean == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  Matrix joint(4, 6, 1.0 / 6.0);
  Matrix alpha(4, 3, 1.0 / 3.0);
  CHECK(SenoneAwareDomainLoss(joint, ind, alpha).mean ==
        doctest::Approx(std::log(6.0)).epsilon(1e-14));
}

TEST_CASE("vectorized losses equal the naive loops") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Rng rng(seed);
    const std::size_t n = 2 + rng.UniformInt(7), k = 2 + rng.UniformInt(4);
    std::vector<int> ind = RandomIndicator(n, &rng);
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i)
      labels[i] = ind[i] == kAdult ? static_cast<int>(rng.UniformInt(k)) : kNoLabel;
    Matrix post = RandomProbRows(n, k, &rng);
    Matrix bin = RandomProbRows(n, 2, &rng);
    Matrix joint = RandomProbRows(n, 2 * k, &rng);
    Matrix alpha = RandomProbRows(n, k, &rng);
    CHECK(std::abs(SenoneCeLoss(post, labels).mean - NaiveCe(post, labels)) <= 1e-10);
    CHECK(std::abs(BinaryDomainLoss(bin, ind).mean - NaiveBinary(bin, ind)) <= 1e-10);
    CHECK(std::abs(SenoneAwareDomainLoss(joint, ind, alpha).mean -
                   NaiveSenoneAware(joint, ind, alpha)) <= 1e-10);
  }
}

TEST_CASE("senone-aware loss with one senone is the binary loss") {
  Rng rng(4);
  for (int rep = 0; rep < 10; ++rep) {
    Matrix p = RandomProbRows(6, 2, &rng);
    std::vector<int> ind = RandomIndicator(6, &rng);
    Matrix alpha(6, 1, 1.0);
    CHECK(std::abs(SenoneAwareDomainLoss(p, ind, alpha).mean - BinaryDomainLoss(p, ind).mean) <=
          1e-12);
  }
}

TEST_CASE("loss gradients match finite differences") {
  Rng rng(8);
  const std::size_t n = 5, k = 3;
  std::vector<int> ind = {0, 1, 0, 1, 1};
  std::vector<int> labels = {1, kNoLabel, 2, kNoLabel, kNoLabel};
  Matrix post = RandomProbRows(n, k, &rng);
  Matrix joint = RandomProbRows(n, 2 * k, &rng);
  Matrix alpha = RandomProbRows(n, k, &rng);

  auto check = [](Matrix p, const std::function<LossResult(const Matrix &)> &f) {
    LossResult r = f(p);
    std::vector<double> fd =
        CentralDifference([&] { return f(p).mean; }, p.Data(), 1e-7);
    CHECK(MaxRelativeError(r.grad.Data(), fd) <= 1e-5);
  };
  check(post, [&](const Matrix &p) { return SenoneCeLoss(p, labels); });
  check(RandomProbRows(n, 2, &rng), [&](const Matrix &p) { return BinaryDomainLoss(p, ind); });
  check(joint, [&](const Matrix &p) { return SenoneAwareDomainLoss(p, ind, alpha); });
}

TEST_CASE("clamped losses stay finite and bounded") {
  Matrix p = Matrix::FromRows({{0.0, 1.0}, {1.0, 0.0}});
  std::vector<int> ind = {0, 1};
  LossResult r = BinaryDomainLoss(p, ind);
  CHECK(std::isfinite(r.mean));
  CHECK(r.per_frame[0] == doctest::Approx(-std::log(kLogFloor)));
  CHECK(r.per_frame[0] <= -std::log(kLogFloor) + 1e-12);
  CHECK(r.grad.AllFinite());
}

TEST_CASE("alpha weights are used as given, without renormalization") {
  Rng rng(12);
  Matrix joint = RandomProbRows(3, 4, &rng);
  std::vector<int> ind = {0, 1, 0};
  Matrix alpha = RandomProbRows(3, 2, &rng);
  Matrix doubled = alpha;
  doubled.Scale(2.0);
  CHECK(SenoneAwareDomainLoss(joint, ind, doubled).mean ==
        doctest::Approx(2.0 * SenoneAwareDomainLoss(joint, ind, alpha).mean).epsilon(1e-14));
}

TEST_CASE("joint layout and marginalization") {
  CHECK(JointColumn(kAdult, 2, 4) == 2);
  CHECK(JointColumn(kChild, 2, 4) == 6);
  Matrix joint = Matrix::FromRows({{0.1, 0.2, 0.3, 0.4}});
  Matrix m = MarginalizeDomain(joint, 2);
  CHECK(m(0, 0) == doctest::Approx(0.3));
  CHECK(m(0, 1) == doctest::Approx(0.7));
  CHECK_THROWS_AS(MarginalizeDomain(joint, 3), ShapeError);
}

TEST_CASE("multitask objective uses separate denominators") {
  BatchLossTerms t = MultitaskObjective(6.0, 3, 8.0, 4);
  CHECK(t.senone_ce_mean == 2.0);
  CHECK(t.domain_loss_mean == 2.0);
  CHECK(t.objective == 0.0);
  t = MultitaskObjective(3.0, 1, 4.0, 8);
  CHECK(t.objective == doctest::Approx(3.0 - 0.5));
  CHECK_THROWS_AS(MultitaskObjective(1.0, 0, 1.0, 4), ConfigError);
  CHECK_THROWS_AS(MultitaskObjective(1.0, 5, 1.0, 4), ConfigError);
}

TEST_CASE("losses reject malformed inputs") {
  Matrix p(2, 3, 1.0 / 3);
  std::vector<int> none = {kNoLabel, kNoLabel};
  CHECK_THROWS_AS(SenoneCeLoss(p, none), ConfigError);
  std::vector<int> out_of_range = {0, 3};
  CHECK_THROWS_AS(SenoneCeLoss(p, out_of_range), ShapeError);
  std::vector<int> bad_ind = {0, 2};
  CHECK_THROWS_AS(BinaryDomainLoss(Matrix(2, 2, 0.5), bad_ind), ConfigError);
  std::vector<int> ind = {0, 1};
  CHECK_THROWS_AS(BinaryDomainLoss(p, ind), ShapeError);
  CHECK_THROWS_AS(SenoneAwareDomainLoss(Matrix(2, 5), ind, Matrix(2, 2)), ShapeError);
}

}  // namespace satadapt
