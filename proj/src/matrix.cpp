#include "kron/matrix.hpp"

#include <algorithm>
#include <stdexcept>

#include "kron/errors.hpp"

namespace kron {

Matrix::Matrix(std::initializer_list<std::initializer_list<Qi>> rows) {
  r_ = rows.size();
  c_ = r_ ? rows.begin()->size() : 0;
  a_.reserve(r_ * c_);
  for (const auto& row : rows) {
    if (row.size() != c_) throw std::invalid_argument("ragged matrix literal");
    a_.insert(a_.end(), row.begin(), row.end());
  }
}

Matrix Matrix::identity(size_t n) {
  Matrix m(n, n);
  for (size_t i = 0; i < n; ++i) m(i, i) = Qi(1);
  return m;
}

bool Matrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const Qi& x) { return x.is_zero(); });
}

Matrix Matrix::transpose() const {
  Matrix t(c_, r_);
  for (size_t i = 0; i < r_; ++i)
    for (size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::conj() const {
  Matrix t = *this;
  for (auto& x : t.a_) x = x.conj();
  return t;
}

Matrix Matrix::block(size_t r0, size_t c0, size_t nr, size_t nc) const {
  Matrix b(nr, nc);
  for (size_t i = 0; i < nr; ++i)
    for (size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

void Matrix::set_block(size_t r0, size_t c0, const Matrix& b) {
  for (size_t i = 0; i < b.rows(); ++i)
    for (size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.c_ != b.r_) fail(ErrorKind::ShapeMismatch, "matrix product shape mismatch");
  Matrix p(a.r_, b.c_);
  for (size_t i = 0; i < a.r_; ++i)
    for (size_t k = 0; k < a.c_; ++k) {
      const Qi& x = a(i, k);
      if (x.is_zero()) continue;
      for (size_t j = 0; j < b.c_; ++j)
        if (!b(k, j).is_zero()) p(i, j) += x * b(k, j);
    }
  return p;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.r_ != b.r_ || a.c_ != b.c_) fail(ErrorKind::ShapeMismatch, "matrix sum shape mismatch");
  Matrix s = a;
  for (size_t k = 0; k < s.a_.size(); ++k) s.a_[k] += b.a_[k];
  return s;
}

Matrix operator-(const Matrix& a, const Matrix& b) { return a + (Qi(-1) * b); }

Matrix operator*(const Qi& s, const Matrix& a) {
  Matrix t = a;
  for (auto& x : t.a_) x *= s;
  return t;
}

std::string Matrix::to_string() const {
  std::string out = "[";
  for (size_t i = 0; i < r_; ++i) {
    out += i ? ",\n [" : "[";
    for (size_t j = 0; j < c_; ++j) out += (j ? ", " : "") + (*this)(i, j).to_string();
    out += "]";
  }
  return out + "]";
}

std::vector<size_t> rref(Matrix& a) {
  std::vector<size_t> pivots;
  size_t row = 0;
  for (size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    size_t p = row;
    while (p < a.rows() && a(p, col).is_zero()) ++p;
    if (p == a.rows()) continue;
    if (p != row)
      for (size_t j = col; j < a.cols(); ++j) std::swap(a(p, j), a(row, j));
    Qi inv = a(row, col).inverse();
    for (size_t j = col; j < a.cols(); ++j)
      if (!a(row, j).is_zero()) a(row, j) *= inv;
    for (size_t i = 0; i < a.rows(); ++i) {
      if (i == row || a(i, col).is_zero()) continue;
      Qi f = a(i, col);
      for (size_t j = col; j < a.cols(); ++j)
        if (!a(row, j).is_zero()) a(i, j) -= f * a(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

size_t rank(Matrix a) {
  // forward elimination only
  size_t row = 0;
  for (size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    size_t p = row;
    while (p < a.rows() && a(p, col).is_zero()) ++p;
    if (p == a.rows()) continue;
    if (p != row)
      for (size_t j = col; j < a.cols(); ++j) std::swap(a(p, j), a(row, j));
    Qi inv = a(row, col).inverse();
    for (size_t i = row + 1; i < a.rows(); ++i) {
      if (a(i, col).is_zero()) continue;
      Qi f = a(i, col) * inv;
      for (size_t j = col; j < a.cols(); ++j)
        if (!a(row, j).is_zero()) a(i, j) -= f * a(row, j);
    }
    ++row;
  }
  return row;
}

Matrix nullspace(const Matrix& a_in) {
  Matrix a = a_in;
  std::vector<size_t> piv = rref(a);
  std::vector<bool> is_piv(a.cols(), false);
  for (size_t c : piv) is_piv[c] = true;
  std::vector<size_t> free;
  for (size_t c = 0; c < a.cols(); ++c)
    if (!is_piv[c]) free.push_back(c);
  Matrix basis(a.cols(), free.size());
  for (size_t f = 0; f < free.size(); ++f) {
    basis(free[f], f) = Qi(1);
    for (size_t r = 0; r < piv.size(); ++r) basis(piv[r], f) = -a(r, free[f]);
  }
  return basis;
}

Qi determinant(Matrix a) {
  if (a.rows() != a.cols()) fail(ErrorKind::ShapeMismatch, "determinant of a non-square matrix");
  const size_t n = a.rows();
  Qi det(1);
  for (size_t col = 0; col < n; ++col) {
    size_t p = col;
    while (p < n && a(p, col).is_zero()) ++p;
    if (p == n) return Qi(0);
    if (p != col) {
      for (size_t j = col; j < n; ++j) std::swap(a(p, j), a(col, j));
      det = -det;
    }
    det *= a(col, col);
    Qi inv = a(col, col).inverse();
    for (size_t i = col + 1; i < n; ++i) {
      if (a(i, col).is_zero()) continue;
      Qi f = a(i, col) * inv;
      for (size_t j = col; j < n; ++j)
        if (!a(col, j).is_zero()) a(i, j) -= f * a(col, j);
    }
  }
  return det;
}

Matrix inverse(const Matrix& a) {
  if (a.rows() != a.cols()) fail(ErrorKind::ShapeMismatch, "inverse of a non-square matrix");
  const size_t n = a.rows();
  if (n == 0) return {};
  Matrix aug(n, 2 * n);
  aug.set_block(0, 0, a);
  aug.set_block(0, n, Matrix::identity(n));
  std::vector<size_t> piv = rref(aug);
  if (piv.size() < n || piv[n - 1] != n - 1) fail(ErrorKind::SingularMap, "matrix is singular");
  return aug.block(0, n, n, n);
}

}  // namespace kron
