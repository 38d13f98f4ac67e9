#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "kron/exact.hpp"
#include "kron/matrix.hpp"

namespace kron {

// Unnormalised amplitudes psi(a, j, k) of a 2 x m x n state.
class StateTensor {
 public:
  StateTensor() = default;
  StateTensor(size_t m, size_t n) : m_(m), n_(n), amp_(2 * m * n) {}

  size_t m() const { return m_; }
  size_t n() const { return n_; }
  Qi& operator()(size_t a, size_t j, size_t k) { return amp_[(a * m_ + j) * n_ + k]; }
  const Qi& operator()(size_t a, size_t j, size_t k) const { return amp_[(a * m_ + j) * n_ + k]; }
  bool is_zero() const;
  friend bool operator==(const StateTensor&, const StateTensor&) = default;

 private:
  size_t m_ = 0, n_ = 0;
  std::vector<Qi> amp_;
};

// mu R + lambda S
struct Pencil {
  Matrix R, S;

  Pencil() = default;
  Pencil(Matrix r, Matrix s);
  Pencil(size_t m, size_t n) : R(m, n), S(m, n) {}
  size_t m() const { return R.rows(); }
  size_t n() const { return R.cols(); }

  BinaryForm entry(size_t i, size_t j) const;  // degree-1 form or ZERO
  Matrix eval(const Qi& mu, const Qi& lambda) const;
  Pencil transpose() const { return {R.transpose(), S.transpose()}; }
  Pencil rows_cols(const std::vector<size_t>& rows, const std::vector<size_t>& cols) const;
  bool is_zero() const { return R.is_zero() && S.is_zero(); }
  friend bool operator==(const Pencil&, const Pencil&) = default;

  std::string to_string() const;
};

// x -> (alpha x + beta) / (gamma x + delta); as Alice's operator it is [[alpha, beta], [gamma, delta]].
struct MoebiusMap {
  Qi alpha{1}, beta{0}, gamma{0}, delta{1};

  static MoebiusMap identity() { return {}; }
  // The unique map with z1 -> 0, z2 -> 1, z3 -> inf (points pairwise distinct).
  static MoebiusMap to_zero_one_inf(const Eigenvalue& z1, const Eigenvalue& z2, const Eigenvalue& z3);
  // The unique map sending (z1, z2, z3) to (w1, w2, w3).
  static MoebiusMap through(const std::array<Eigenvalue, 3>& z, const std::array<Eigenvalue, 3>& w);

  Qi det() const { return alpha * delta - beta * gamma; }
  Eigenvalue operator()(const Eigenvalue& x) const;
  MoebiusMap inverse() const;
  friend MoebiusMap operator*(const MoebiusMap& f, const MoebiusMap& g);  // f after g
  Matrix matrix() const { return {{alpha, beta}, {gamma, delta}}; }
  static MoebiusMap from_matrix(const Matrix& a);
};

Pencil pencil_from_state(const StateTensor& s);
StateTensor state_from_pencil(const Pencil& p);

// Substitution mu -> alpha mu + gamma lambda, lambda -> beta mu + delta lambda, i.e. the pencil of
// (A (x) 1 (x) 1)|psi>. Eigenvalue x of p becomes a(x).
Pencil apply_alice(const Pencil& p, const MoebiusMap& a);
// (B R C^T, B S C^T)
Pencil apply_bc(const Pencil& p, const Matrix& B, const Matrix& C);
// (A (x) B (x) C)|psi> computed on amplitudes.
StateTensor apply_local(const StateTensor& s, const Matrix& A, const Matrix& B, const Matrix& C);

// Monic gcd of all k-minors by explicit enumeration (reference route).
BinaryForm k_minor_gcd(const Pencil& p, size_t k);
size_t pencil_rank(const Pencil& p);

// E_1 .. E_r, via the Smith form over Q(i)[t] at mu = 1 and at lambda = 1.
std::vector<BinaryForm> invariant_polynomials(const Pencil& p);
// E_k = D_k / D_{k-1} from minor enumeration; limited to min(m, n) <= 6.
std::vector<BinaryForm> invariant_polynomials_by_minors(const Pencil& p);
// D_k as the product of the first k invariant polynomials.
BinaryForm determinantal_divisor(const std::vector<BinaryForm>& invariants, size_t k);

// Invariant factors (monic, non-zero ones only) of a polynomial matrix over Q(i)[t].
std::vector<Poly> smith_invariant_factors(std::vector<std::vector<Poly>> a);

struct LocalRanks {
  size_t a = 0, b = 0, c = 0;
  friend bool operator==(const LocalRanks&, const LocalRanks&) = default;
};
LocalRanks local_ranks(const StateTensor& s);

}  // namespace kron
