#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "kron/exact.hpp"

namespace kron {

// Dense row-major matrix over Q(i).
class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<Qi>> rows);
  static Matrix identity(size_t n);

  size_t rows() const { return r_; }
  size_t cols() const { return c_; }
  Qi& operator()(size_t i, size_t j) { return a_[i * c_ + j]; }
  const Qi& operator()(size_t i, size_t j) const { return a_[i * c_ + j]; }

  bool is_zero() const;
  Matrix transpose() const;
  // Entrywise complex conjugate.
  Matrix conj() const;
  Matrix block(size_t r0, size_t c0, size_t nr, size_t nc) const;
  void set_block(size_t r0, size_t c0, const Matrix& b);

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Qi& s, const Matrix& a);
  friend bool operator==(const Matrix& a, const Matrix& b) = default;

  std::string to_string() const;

 private:
  size_t r_ = 0, c_ = 0;
  std::vector<Qi> a_;
};

// Reduced row echelon form with first-nonzero pivoting; returns pivot columns.
std::vector<size_t> rref(Matrix& a);
size_t rank(Matrix a);
// Basis of {x : a x = 0}, one vector per column of the result.
Matrix nullspace(const Matrix& a);
Qi determinant(Matrix a);
// Throws Error(SingularMap) if a is singular.
Matrix inverse(const Matrix& a);

}  // namespace kron
