#include "gcdeform/linalg.hpp"

#include <stdexcept>

namespace gcdeform {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t k = 0; k < n; ++k) m(k, k) = 1;
  return m;
}

std::vector<GaussianRational> Matrix::column(std::size_t c) const {
  std::vector<GaussianRational> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

bool Matrix::is_zero() const {
  for (const auto& v : data_) {
    if (!v.is_zero()) return false;
  }
  return true;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix: dimension mismatch in product");
  Matrix out(a.rows_, b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const auto& x = a(r, k);
      if (x.is_zero()) continue;
      for (std::size_t c = 0; c < b.cols_; ++c) out(r, c) += x * b(k, c);
    }
  }
  return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("Matrix: dimension mismatch in sum");
  Matrix out = a;
  for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] += b.data_[k];
  return out;
}

RowEchelon rref(Matrix m) {
  RowEchelon out;
  std::size_t lead = 0;
  for (std::size_t c = 0; c < m.cols() && lead < m.rows(); ++c) {
    std::size_t r = lead;
    while (r < m.rows() && m(r, c).is_zero()) ++r;
    if (r == m.rows()) continue;
    if (r != lead) {
      for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(r, k), m(lead, k));
    }
    GaussianRational inv = GaussianRational(1) / m(lead, c);
    for (std::size_t k = 0; k < m.cols(); ++k) m(lead, k) *= inv;
    for (std::size_t o = 0; o < m.rows(); ++o) {
      if (o == lead || m(o, c).is_zero()) continue;
      GaussianRational f = m(o, c);
      for (std::size_t k = 0; k < m.cols(); ++k) m(o, k) -= f * m(lead, k);
    }
    out.pivot_columns.push_back(c);
    ++lead;
  }
  out.reduced = std::move(m);
  return out;
}

std::size_t rank(const Matrix& m) { return rref(m).pivot_columns.size(); }

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const std::size_t n = m.rows();
  Matrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = 1;
  }
  RowEchelon e = rref(std::move(aug));
  if (e.pivot_columns.size() < n || e.pivot_columns[n - 1] != n - 1) return std::nullopt;
  Matrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = e.reduced(r, n + c);
  }
  return inv;
}

std::optional<std::vector<GaussianRational>> solve(const Matrix& a, const std::vector<GaussianRational>& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve: right-hand side has wrong length");
  Matrix aug(a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
    aug(r, a.cols()) = b[r];
  }
  RowEchelon e = rref(std::move(aug));
  std::vector<GaussianRational> x(a.cols());
  for (std::size_t k = 0; k < e.pivot_columns.size(); ++k) {
    std::size_t c = e.pivot_columns[k];
    if (c == a.cols()) return std::nullopt;
    x[c] = e.reduced(k, a.cols());
  }
  return x;
}

std::vector<std::vector<GaussianRational>> column_space_basis(const Matrix& m) {
  RowEchelon e = rref(m.transpose());
  std::vector<std::vector<GaussianRational>> out;
  for (std::size_t k = 0; k < e.pivot_columns.size(); ++k) {
    std::vector<GaussianRational> v(m.rows());
    for (std::size_t c = 0; c < m.rows(); ++c) v[c] = e.reduced(k, c);
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<std::vector<GaussianRational>> null_space(const Matrix& m) {
  RowEchelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivot_columns) is_pivot[c] = true;
  std::vector<std::vector<GaussianRational>> out;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<GaussianRational> v(m.cols());
    v[f] = 1;
    for (std::size_t k = 0; k < e.pivot_columns.size(); ++k) v[e.pivot_columns[k]] = -e.reduced(k, f);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace gcdeform
