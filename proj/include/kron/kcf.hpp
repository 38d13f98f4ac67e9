#pragma once

#include <string>
#include <vector>

#include "kron/exact.hpp"
#include "kron/matrix.hpp"
#include "kron/pencil.hpp"

namespace kron {

// Block sizes for one eigenvalue, descending.
using SizeSignature = std::vector<int>;

struct EigenEntry {
  Eigenvalue x;
  SizeSignature sig;
  int weight() const;
  friend bool operator==(const EigenEntry&, const EigenEntry&) = default;
};

// Complete invariant of strict equivalence. Zero minimal indices are kept in h (left) and g (right).
struct KroneckerStructure {
  int h = 0, g = 0;
  std::vector<int> eps;  // right minimal indices >= 1, ascending
  std::vector<int> nu;   // left minimal indices >= 1, ascending
  std::vector<EigenEntry> eigen;  // sorted by eigenvalue, finite first

  int q() const;  // total size of the regular part
  int m() const;
  int n() const;
  // Sorts every list into canonical order.
  void canonicalize();
  bool has_eigenvalues() const { return !eigen.empty(); }
  friend bool operator==(const KroneckerStructure&, const KroneckerStructure&) = default;

  // e.g. "L1+L2+M1(0)"; blocks in canonical order.
  std::string to_string() const;
};

enum class Side { Right, Left };

// Polynomial vector sum_j coeffs.col(j) mu^(d-j) lambda^j.
struct NullVector {
  int degree = 0;
  Matrix coeffs;  // length x (degree + 1)
};

std::vector<EigenEntry> eigen_structure(const Pencil& p);
std::vector<EigenEntry> eigen_structure_from_invariants(const std::vector<BinaryForm>& invariants);
// Ascending, zeros included.
std::vector<int> minimal_indices(const Pencil& p, Side side);
// A minimal polynomial basis of the right (or left) null space, ordered by degree.
std::vector<NullVector> minimal_null_basis(const Pencil& p, Side side);
// P(mu, lambda) applied to a polynomial vector; returns the coefficient matrix of the product.
Matrix apply_to_null_vector(const Pencil& p, const NullVector& v);

KroneckerStructure kronecker_structure(const Pencil& p);

Pencil block_L(int eps);
Pencil block_LT(int nu);
Pencil block_M(int e, const Qi& x);
Pencil block_N(int e);
Pencil direct_sum(const std::vector<Pencil>& blocks);
Pencil assemble_kcf(const KroneckerStructure& ks);

struct KcfReduction {
  Matrix B, C;  // B P C^T = kcf
  Pencil kcf;
  KroneckerStructure structure;
};
KcfReduction kcf_reduce(const Pencil& p);
// Invertible B, C with B p C^T = target, for a target with the same structure as p.
bool find_equivalence(const Pencil& p, const Pencil& target, Matrix& B, Matrix& C);

bool strictly_equivalent(const Pencil& p1, const Pencil& p2);

}  // namespace kron
