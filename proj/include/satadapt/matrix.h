// satadapt/satadapt/matrix.h

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

#ifndef SATADAPT_MATRIX_H_
#define SATADAPT_MATRIX_H_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace satadapt {

/// Dense row-major matrix of doubles.  Rows are frames, columns are
/// feature or class dimensions throughout the library.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);

  /// Builds a matrix from nested braces, e.g. {{1, 2}, {3, 4}}.
  static Matrix FromRows(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t NumRows() const { return rows_; }
  std::size_t NumCols() const { return cols_; }
  std::size_t Size() const { return data_.size(); }
  bool Empty() const { return data_.empty(); }

  double &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> Row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> Row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<double> Data() { return data_; }
  std::span<const double> Data() const { return data_; }

  void SetZero();
  void Resize(std::size_t rows, std::size_t cols);
  bool AllFinite() const;
  bool SameShape(const Matrix &other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  /// this += alpha * other.
  void AddScaled(const Matrix &other, double alpha);
  void Scale(double alpha);
  Matrix &operator+=(const Matrix &other);
  Matrix &operator-=(const Matrix &other);

  friend bool operator==(const Matrix &, const Matrix &) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// a * b
Matrix MatMul(const Matrix &a, const Matrix &b);
/// a^T * b
Matrix MatMulTransA(const Matrix &a, const Matrix &b);
/// a * b^T
Matrix MatMulTransB(const Matrix &a, const Matrix &b);

/// Sum of elementwise products; shapes must agree.
double Dot(const Matrix &a, const Matrix &b);
double MaxAbs(const Matrix &a);

Matrix SelectRows(const Matrix &m, std::span<const std::size_t> rows);
std::vector<std::size_t> RowArgmax(const Matrix &m);

}  // namespace satadapt

#endif  // SATADAPT_MATRIX_H_
