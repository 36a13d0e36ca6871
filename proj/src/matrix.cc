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

#include "crgc/matrix.h"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "crgc/error.h"

namespace crgc {

Matrix::Matrix(FieldPtr field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), entries_(rows * cols, 0) {
  if (!field_) throw InvalidArgument("matrix without a field");
}

Matrix Matrix::identity(FieldPtr field, std::size_t size) {
  Matrix out(std::move(field), size, size);
  for (std::size_t i = 0; i < size; ++i) out.entries_[i * size + i] = 1;
  return out;
}

Matrix Matrix::from_rows(FieldPtr field,
                         const std::vector<std::vector<Symbol>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Matrix out(std::move(field), rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw DimensionMismatch("ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) out.set(i, j, rows[i][j]);
  }
  return out;
}

FieldElement Matrix::at(std::size_t i, std::size_t j) const {
  if (i >= rows_ || j >= cols_) throw InvalidArgument("matrix index out of range");
  return {field_, entries_[i * cols_ + j]};
}

void Matrix::set(std::size_t i, std::size_t j, Symbol value) {
  if (i >= rows_ || j >= cols_) throw InvalidArgument("matrix index out of range");
  if (!field_->contains(value)) throw InvalidArgument("entry outside the field");
  entries_[i * cols_ + j] = value;
}

Matrix Matrix::select_columns(std::span<const std::size_t> cols) const {
  Matrix out(field_, rows_, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c] >= cols_) throw InvalidArgument("column index out of range");
    for (std::size_t i = 0; i < rows_; ++i) {
      out.entries_[i * cols.size() + c] = entries_[i * cols_ + cols[c]];
    }
  }
  return out;
}

std::vector<Symbol> Matrix::column(std::size_t j) const {
  if (j >= cols_) throw InvalidArgument("column index out of range");
  std::vector<Symbol> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = entries_[i * cols_ + j];
  return out;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j);
    os << "]";
  }
  os << "]";
  return os.str();
}

bool operator==(const Matrix& a, const Matrix& b) {
  require_same_field(*a.field_, *b.field_);
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
}

Matrix vandermonde(FieldPtr field, std::size_t k, std::span<const Symbol> points) {
  if (k > points.size()) {
    throw InvalidArgument("Vandermonde matrix needs at least k points");
  }
  std::unordered_set<Symbol> seen;
  for (auto x : points) {
    if (!field->contains(x)) throw InvalidArgument("evaluation point outside the field");
    if (!seen.insert(x).second) throw InvalidArgument("evaluation points must be distinct");
  }
  Matrix out(field, k, points.size());
  for (std::size_t j = 0; j < points.size(); ++j) {
    Symbol power = 1;
    for (std::size_t i = 0; i < k; ++i) {
      out.set(i, j, power);
      power = field->mul(power, points[j]);
    }
  }
  return out;
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
  require_same_field(*a.field(), *b.field());
  if (a.cols() != b.rows()) {
    throw DimensionMismatch("inner dimensions disagree in matrix product");
  }
  const Field& f = *a.field();
  Matrix out(a.field(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t t = 0; t < a.cols(); ++t) {
      const Symbol lhs = a(i, t);
      if (lhs == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        out.set(i, j, f.add(out(i, j), f.mul(lhs, b(t, j))));
      }
    }
  }
  return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_same_field(*a.field(), *b.field());
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch("matrix sum needs equal shapes");
  }
  Matrix out(a.field(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      out.set(i, j, a.field()->add(a(i, j), b(i, j)));
    }
  }
  return out;
}

Matrix invert(const Matrix& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("only square matrices invert");
  const Field& f = *a.field();
  const std::size_t n = a.rows();
  // Augmented [A | I] as plain row vectors.
  std::vector<std::vector<Symbol>> work(n, std::vector<Symbol>(2 * n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) work[i][j] = a(i, j);
    work[i][n + i] = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && work[pivot][col] == 0) ++pivot;
    if (pivot == n) throw SingularMatrix("matrix is singular");
    std::swap(work[pivot], work[col]);
    const Symbol scale = f.inv(work[col][col]);
    for (auto& x : work[col]) x = f.mul(x, scale);
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || work[row][col] == 0) continue;
      const Symbol factor = work[row][col];
      for (std::size_t j = 0; j < 2 * n; ++j) {
        work[row][j] = f.sub(work[row][j], f.mul(factor, work[col][j]));
      }
    }
  }
  Matrix out(a.field(), n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out.set(i, j, work[i][n + j]);
  }
  return out;
}

}  // namespace crgc
