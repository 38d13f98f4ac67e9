#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kron/kcf.hpp"
#include "kron/pencil.hpp"

namespace kron {

// (A (x) B (x) C) maps the source state onto the target state up to a global scalar.
struct TransformWitness {
  Matrix A = Matrix::identity(2);
  Matrix B, C;  // B: m' x m, C: n' x n
};

// second after first
TransformWitness compose(const TransformWitness& first, const TransformWitness& second);
bool verify_witness(const StateTensor& src, const TransformWitness& w, const StateTensor& dst);
// Pencil form of verify_witness.
bool verify_pencil_witness(const Pencil& src, const TransformWitness& w, const Pencil& dst);

enum class EliminationSide { Column, Row };

// Column side: column k becomes c_k + a_k c_i for k != i and column i is removed; Row side likewise on rows.
struct EliminationSpec {
  EliminationSide side = EliminationSide::Column;
  size_t index = 0;
  std::vector<Qi> coeffs;  // one per column (row); the entry at `index` is ignored
  std::string to_string() const;
};

Pencil eliminate(const Pencil& p, const EliminationSpec& spec);
// (dim - 1) x dim matrix E with apply_bc(p, I, E) (Column) or apply_bc(p, E, I) (Row) equal to eliminate(p, spec).
Matrix elimination_matrix(const EliminationSpec& spec, size_t dim);

// a_k = (-1)^(m-k) e_(m-k)(xs), so that the companion pencil has determinant prod(x_i mu + lambda).
std::vector<Qi> companion_coeffs(const std::vector<Qi>& xs);
// L_m with its last column added to the others with coefficients -a_k.
Pencil companion_pencil(const std::vector<Qi>& xs);

// L_m state -> diag(x_1 mu + lambda, ...) state, xs pairwise distinct (inf allowed, giving mu).
TransformWitness lm_to_distinct(int m, const std::vector<Eigenvalue>& xs);
// L_m state -> KCF of the companion pencil (one block per distinct eigenvalue); repeats allowed.
TransformWitness lm_to_companion(int m, const std::vector<Eigenvalue>& xs, KroneckerStructure* result = nullptr);
// diag(x_1 mu + lambda, ..., x_(m+1) mu + lambda) state -> L_m state, by removing the first row.
TransformWitness distinct_to_lm(const std::vector<Eigenvalue>& xs);

struct GenericStep {
  Matrix Btilde;  // m x m, invertible
  Matrix C;       // (n - 1) x n
};
// Redistributes the right null-space blocks eps (sum m) into eps' (sum m, one block fewer);
// Btilde^-1 (+)L_eps C^T = (+)L_eps'.
GenericStep generic_step(int m, const std::vector<int>& eps, const std::vector<int>& eps_prime);
bool generic_step_condition(const std::vector<int>& eps, const std::vector<int>& eps_prime);

// One block construction step acting on a pool of L1 blocks, at most one L2 and at most one M1(0).
struct BlockStep {
  enum class Kind {
    BuildL,           // L_size from L1 blocks, or from the L2 if from_l2
    BuildLT,          // L^T_size via L_(size+1) with first and last column discarded
    LTfromM0,         // L^T_size from L_size (L1 blocks, or the L2 if from_l2) and the M1(0)
    NewEigenvalue,    // M1(x) from one L1
    NewInfinite,      // N1 from one L1
    EnlargeM,         // grows the latest block with eigenvalue x by one L1
    EnlargeN,         // same for the infinite eigenvalue
    SeedFromM0,       // the M1(0) becomes the block of eigenvalue x (fixes Alice's map)
    CompanionL2,      // the L2 becomes M2(x) or M1(x) + M1(x2)
    MergeL2IntoSeed,  // the L2 and a size-1 seed block become M3 of the seed eigenvalue
  };
  Kind kind = Kind::BuildL;
  int size = 0;
  bool from_l2 = false;
  Eigenvalue x, x2;

  std::string to_string() const;
};

struct BlockResult {
  TransformWitness witness;  // assemble_kcf(src) state -> assemble_kcf(structure) state
  KroneckerStructure structure;
  MoebiusMap frame;  // Alice's map
};

// Sources accepted: h = g = 0, right indices 1 (any number) and at most one 2, optionally M1(0), nothing else.
BlockResult consume_blocks(const std::vector<BlockStep>& script, const KroneckerStructure& src);
// A script turning src into target; throws InsufficientBlocks when the pool cannot supply it.
std::vector<BlockStep> plan_blocks(const KroneckerStructure& src, const KroneckerStructure& target);

// Seeded search over single column eliminations with coefficients in {-2, -1, 0, 1, 2, i, -i}.
// Every distinct resulting structure is recorded; queries match targets up to Alice's Moebius maps.
class EliminationSearch {
 public:
  EliminationSearch(Pencil src, std::uint64_t seed, std::size_t budget);

  std::optional<TransformWitness> find(const KroneckerStructure& target) const;
  std::size_t tried() const { return tried_; }
  bool exhaustive() const { return exhaustive_; }
  const std::vector<std::pair<KroneckerStructure, EliminationSpec>>& reached() const { return reached_; }

 private:
  Pencil src_;
  std::size_t tried_ = 0;
  bool exhaustive_ = false;
  std::vector<std::pair<KroneckerStructure, EliminationSpec>> reached_;
};

}  // namespace kron
