#pragma once

// Dense exact linear algebra over the Gaussian rationals.

#include <cstddef>
#include <optional>
#include <vector>

#include "gcdeform/scalar.hpp"

namespace gcdeform {

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  GaussianRational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const GaussianRational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<GaussianRational> column(std::size_t c) const;
  Matrix transpose() const;
  bool is_zero() const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<GaussianRational> data_;
};

struct RowEchelon {
  Matrix reduced;
  std::vector<std::size_t> pivot_columns;
};

/// Reduced row echelon form, pivots searched left to right.
RowEchelon rref(Matrix m);

std::size_t rank(const Matrix& m);

std::optional<Matrix> inverse(const Matrix& m);

/// Some x with a*x = b, or nullopt when b is outside the column space.
std::optional<std::vector<GaussianRational>> solve(const Matrix& a, const std::vector<GaussianRational>& b);

/// Basis of the column space, as columns of the reduced column echelon form
/// (deterministic, independent of column order within a span).
std::vector<std::vector<GaussianRational>> column_space_basis(const Matrix& m);

/// Basis of {x : m*x = 0}.
std::vector<std::vector<GaussianRational>> null_space(const Matrix& m);

}  // namespace gcdeform
