// satadapt/src/matrix.cc

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

#include "satadapt/matrix.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "satadapt/error.h"

namespace satadapt {

namespace {

void CheckSameShape(const Matrix &a, const Matrix &b, const char *op) {
  if (!a.SameShape(b)) {
    std::ostringstream os;
    os << op << ": shape mismatch " << a.NumRows() << "x" << a.NumCols()
       << " vs " << b.NumRows() << "x" << b.NumCols();
    throw ShapeError(os.str());
  }
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix Matrix::FromRows(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix m;
  m.rows_ = rows.size();
  m.cols_ = rows.size() == 0 ? 0 : rows.begin()->size();
  m.data_.reserve(m.rows_ * m.cols_);
  for (const auto &row : rows) {
    if (row.size() != m.cols_) throw ShapeError("FromRows: ragged rows");
    m.data_.insert(m.data_.end(), row.begin(), row.end());
  }
  return m;
}

void Matrix::SetZero() { std::fill(data_.begin(), data_.end(), 0.0); }

void Matrix::Resize(std::size_t rows, std::size_t cols) {
  rows_ = rows;
  cols_ = cols;
  data_.assign(rows * cols, 0.0);
}

bool Matrix::AllFinite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](double v) { return std::isfinite(v); });
}

void Matrix::AddScaled(const Matrix &other, double alpha) {
  CheckSameShape(*this, other, "AddScaled");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += alpha * other.data_[i];
}

void Matrix::Scale(double alpha) {
  for (double &v : data_) v *= alpha;
}

Matrix &Matrix::operator+=(const Matrix &other) {
  AddScaled(other, 1.0);
  return *this;
}

Matrix &Matrix::operator-=(const Matrix &other) {
  AddScaled(other, -1.0);
  return *this;
}

Matrix MatMul(const Matrix &a, const Matrix &b) {
  if (a.NumCols() != b.NumRows())
    throw ShapeError("MatMul: inner dimensions differ");
  const std::size_t n = a.NumRows(), k = a.NumCols(), m = b.NumCols();
  Matrix c(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    double *ci = c.Row(i).data();
    const double *ai = a.Row(i).data();
    for (std::size_t p = 0; p < k; ++p) {
      const double aip = ai[p];
      if (aip == 0.0) continue;
      const double *bp = b.Row(p).data();
      for (std::size_t j = 0; j < m; ++j) ci[j] += aip * bp[j];
    }
  }
  return c;
}

Matrix MatMulTransA(const Matrix &a, const Matrix &b) {
  if (a.NumRows() != b.NumRows())
    throw ShapeError("MatMulTransA: row counts differ");
  const std::size_t n = a.NumRows(), k = a.NumCols(), m = b.NumCols();
  Matrix c(k, m);
  for (std::size_t r = 0; r < n; ++r) {
    const double *ar = a.Row(r).data();
    const double *br = b.Row(r).data();
    for (std::size_t i = 0; i < k; ++i) {
      const double ari = ar[i];
      if (ari == 0.0) continue;
      double *ci = c.Row(i).data();
      for (std::size_t j = 0; j < m; ++j) ci[j] += ari * br[j];
    }
  }
  return c;
}

Matrix MatMulTransB(const Matrix &a, const Matrix &b) {
  if (a.NumCols() != b.NumCols())
    throw ShapeError("MatMulTransB: column counts differ");
  const std::size_t n = a.NumRows(), k = a.NumCols(), m = b.NumRows();
  Matrix c(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    const double *ai = a.Row(i).data();
    for (std::size_t j = 0; j < m; ++j) {
      const double *bj = b.Row(j).data();
      double s = 0.0;
      for (std::size_t p = 0; p < k; ++p) s += ai[p] * bj[p];
      c(i, j) = s;
    }
  }
  return c;
}

double Dot(const Matrix &a, const Matrix &b) {
  CheckSameShape(a, b, "Dot");
  double s = 0.0;
  auto da = a.Data(), db = b.Data();
  for (std::size_t i = 0; i < da.size(); ++i) s += da[i] * db[i];
  return s;
}

double MaxAbs(const Matrix &a) {
  double m = 0.0;
  for (double v : a.Data()) m = std::max(m, std::fabs(v));
  return m;
}

Matrix SelectRows(const Matrix &m, std::span<const std::size_t> rows) {
  Matrix out(rows.size(), m.NumCols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] >= m.NumRows()) throw ShapeError("SelectRows: index out of range");
    auto src = m.Row(rows[i]);
    std::copy(src.begin(), src.end(), out.Row(i).begin());
  }
  return out;
}

std::vector<std::size_t> RowArgmax(const Matrix &m) {
  std::vector<std::size_t> out(m.NumRows(), 0);
  for (std::size_t r = 0; r < m.NumRows(); ++r) {
    auto row = m.Row(r);
    out[r] = static_cast<std::size_t>(
        std::max_element(row.begin(), row.end()) - row.begin());
  }
  return out;
}

}  // namespace satadapt
