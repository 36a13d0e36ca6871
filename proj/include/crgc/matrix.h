// Copyright 2026 The CRGC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "crgc/galois.h"

namespace crgc {

// Dense row-major matrix over one finite field.
class Matrix {
 public:
  // rows x cols zero matrix.
  Matrix(FieldPtr field, std::size_t rows, std::size_t cols);

  static Matrix identity(FieldPtr field, std::size_t size);
  static Matrix from_rows(FieldPtr field,
                          const std::vector<std::vector<Symbol>>& rows);

  const FieldPtr& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Symbol operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }
  FieldElement at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, Symbol value);

  std::span<const Symbol> row(std::size_t i) const {
    return {entries_.data() + i * cols_, cols_};
  }
  std::span<const Symbol> data() const { return entries_; }

  // Columns in the given order.
  Matrix select_columns(std::span<const std::size_t> cols) const;
  std::vector<Symbol> column(std::size_t j) const;

  std::string to_string() const;

  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  FieldPtr field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Symbol> entries_;
};

// k x n matrix with entry (i, j) = points[j]^i. Throws InvalidArgument on
// repeated points or when k exceeds the point count.
Matrix vandermonde(FieldPtr field, std::size_t k, std::span<const Symbol> points);

Matrix mat_mul(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);

// Gauss-Jordan elimination with first-nonzero pivoting. Throws
// DimensionMismatch for non-square input and SingularMatrix when a column
// runs out of pivots.
Matrix invert(const Matrix& a);

}  // namespace crgc
