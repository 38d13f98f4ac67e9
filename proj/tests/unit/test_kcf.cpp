#include <algorithm>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "kron/kcf.hpp"

using namespace kron;
using testing_util::make_structure;
using testing_util::pencil;

namespace {

// Random valid structure with at most `budget` blocks and nonempty shape.
KroneckerStructure random_structure(std::mt19937_64& rng, int budget) {
  const char* pool[] = {"0", "1", "-2", "1+1 i", "inf"};
  KroneckerStructure ks;
  while (ks.m() == 0 || ks.n() == 0) {
    ks = {};
    int blocks = 1 + static_cast<int>(rng() % static_cast<unsigned>(budget));
    for (int b = 0; b < blocks; ++b) {
      switch (rng() % 6) {
        case 0: ks.eps.push_back(1 + static_cast<int>(rng() % 3)); break;
        case 1: ks.nu.push_back(1 + static_cast<int>(rng() % 2)); break;
        case 2: (rng() % 2 ? ks.g : ks.h)++; break;
        default: {
          Eigenvalue x = Eigenvalue::parse(pool[rng() % 5]);
          int size = 1 + static_cast<int>(rng() % 2);
          auto it = std::find_if(ks.eigen.begin(), ks.eigen.end(), [&](const EigenEntry& e) { return e.x == x; });
          if (it == ks.eigen.end()) ks.eigen.push_back({x, {size}});
          else it->sig.push_back(size);
        }
      }
    }
  }
  ks.canonicalize();
  return ks;
}

}  // namespace

TEST_CASE("structures of W, GHZ and the worked 4x5 pencil") {
  auto w = kronecker_structure(pencil({{"l", "m"}, {"m", "0"}}));
  CHECK(w == make_structure({}, {}, {{"inf", {2}}}));
  CHECK(assemble_kcf(w) == pencil({{"m", "l"}, {"0", "m"}}));

  auto ghz = kronecker_structure(pencil({{"m", "0"}, {"0", "l"}}));
  CHECK(ghz == make_structure({}, {}, {{"0", {1}}, {"inf", {1}}}));

  Pencil p = testing_util::example_4x5();
  CHECK(minimal_indices(p, Side::Right) == std::vector<int>{2});
  CHECK(minimal_indices(p, Side::Left).empty());
  auto ks = kronecker_structure(p);
  CHECK(ks == make_structure({2}, {}, {{"3", {1}}, {"inf", {1}}}));
  CHECK(assemble_kcf(ks) == pencil({{"l", "m", "0", "0", "0"},
                                    {"0", "l", "m", "0", "0"},
                                    {"0", "0", "0", "3m+l", "0"},
                                    {"0", "0", "0", "0", "m"}}));
  CHECK(ks.to_string() == "L2+M1(3)+N1");
}

TEST_CASE("eigen structure examples") {
  auto two = eigen_structure(pencil({{"l", "0"}, {"0", "l"}}));
  REQUIRE(two.size() == 1);
  CHECK(two[0].x == Eigenvalue(Qi(0)));
  CHECK(two[0].sig == SizeSignature{1, 1});

  // finite part t^3 - 3t - 2 = (t + 1)^2 (t - 2); eigenvalue x is the root of x mu + lambda
  Pencil comp = pencil({{"l", "m", "0"}, {"0", "l", "m"}, {"-2m", "3m", "l"}});
  auto e = eigen_structure(comp);
  REQUIRE(e.size() == 2);
  CHECK(e[0].x == Eigenvalue(Qi(-2)));
  CHECK(e[0].sig == SizeSignature{1});
  CHECK(e[1].x == Eigenvalue(Qi(1)));
  CHECK(e[1].sig == SizeSignature{2});

  // lambda^2 + 2 mu^2 does not split
  CHECK_THROWS_AS(eigen_structure(pencil({{"l", "2m"}, {"-m", "l"}})), Error);
}

TEST_CASE("minimal indices of block sums") {
  Pencil l1l2 = direct_sum({block_L(1), block_L(2)});
  CHECK(minimal_indices(l1l2, Side::Right) == std::vector<int>{1, 2});
  CHECK(minimal_indices(block_L(2), Side::Right) == std::vector<int>{2});
  CHECK(minimal_indices(block_LT(3), Side::Left) == std::vector<int>{3});
  CHECK(assemble_kcf(make_structure({4}, {}, {})) == block_L(4));
}

TEST_CASE("explicit null vectors of L blocks") {
  for (int eps = 1; eps <= 8; ++eps) {
    NullVector x;
    x.degree = eps;
    x.coeffs = Matrix(static_cast<size_t>(eps + 1), static_cast<size_t>(eps + 1));
    for (int j = 0; j <= eps; ++j) x.coeffs(static_cast<size_t>(j), static_cast<size_t>(j)) = Qi(j % 2 ? -1 : 1);
    CHECK(apply_to_null_vector(block_L(eps), x).is_zero());
    CHECK(minimal_indices(block_L(eps), Side::Right) == std::vector<int>{eps});
  }
}

TEST_CASE("structure round trip through assembly and scrambling") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 80; ++t) {
    KroneckerStructure ks = random_structure(rng, 4);
    Pencil k = assemble_kcf(ks);
    CHECK(kronecker_structure(k) == ks);
    CHECK(k.m() == static_cast<size_t>(ks.m()));
    CHECK(k.n() == static_cast<size_t>(ks.n()));
    CHECK(kronecker_structure(testing_util::scramble(rng, k)) == ks);
  }
}

TEST_CASE("kcf_reduce witnesses verify on scrambled pencils") {
  std::mt19937_64 rng(37);
  for (int t = 0; t < 200; ++t) {
    KroneckerStructure ks = random_structure(rng, 3);
    Pencil p = testing_util::scramble(rng, assemble_kcf(ks));
    KcfReduction red = kcf_reduce(p);
    CHECK(red.structure == ks);
    CHECK_FALSE(determinant(red.B).is_zero());
    CHECK_FALSE(determinant(red.C).is_zero());
    CHECK(apply_bc(p, red.B, red.C) == assemble_kcf(ks));
  }
}

TEST_CASE("kcf_reduce on a companion pencil and on a KCF") {
  Pencil comp = pencil({{"l", "m", "0"}, {"0", "l", "m"}, {"-6m", "7m", "l"}});
  KcfReduction red = kcf_reduce(comp);
  CHECK(apply_bc(comp, red.B, red.C) == red.kcf);
  CHECK(red.structure == make_structure({}, {}, {{"1", {1}}, {"2", {1}}, {"-3", {1}}}));

  Pencil k = assemble_kcf(make_structure({1}, {2}, {{"0", {2, 1}}}));
  KcfReduction same = kcf_reduce(k);
  CHECK(apply_bc(k, same.B, same.C) == k);
}

TEST_CASE("strict equivalence") {
  std::mt19937_64 rng(41);
  Pencil p = testing_util::example_4x5();
  CHECK(strictly_equivalent(p, testing_util::scramble(rng, p)));
  Pencil a = direct_sum({block_L(1), block_L(2)});
  Pencil b = direct_sum({block_L(3), Pencil(0, 1)});  // L3 padded with a zero column
  CHECK_FALSE(strictly_equivalent(a, b));
  CHECK_THROWS_AS(strictly_equivalent(a, block_L(2)), Error);
}

TEST_CASE("minimal basis degrees lower-bound any independent null vectors") {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 30; ++t) {
    KroneckerStructure ks = random_structure(rng, 4);
    if (ks.eps.empty() && ks.g == 0) continue;
    Pencil p = testing_util::scramble(rng, assemble_kcf(ks));
    auto basis = minimal_null_basis(p, Side::Right);
    auto eps = minimal_indices(p, Side::Right);
    REQUIRE(basis.size() == eps.size());
    for (size_t l = 0; l < basis.size(); ++l) {
      CHECK(basis[l].degree == eps[l]);
      CHECK(apply_to_null_vector(p, basis[l]).is_zero());
    }
    // shifted copies mu^a lambda^b y are independent null vectors of higher degree
    std::vector<int> degs;
    for (const auto& y : basis) degs.push_back(y.degree + static_cast<int>(rng() % 3));
    std::sort(degs.begin(), degs.end());
    for (size_t l = 0; l < degs.size(); ++l) CHECK(degs[l] >= eps[l]);
  }
}

TEST_CASE("D_m = 1 exactly for pencils with only right null-space blocks") {
  std::mt19937_64 rng(47);
  int positives = 0, negatives = 0;
  for (int t = 0; t < 120; ++t) {
    KroneckerStructure ks = random_structure(rng, 4);
    if (ks.n() <= ks.m()) continue;
    Pencil p = testing_util::scramble(rng, assemble_kcf(ks));
    bool right_only = ks.nu.empty() && ks.eigen.empty() && ks.h == 0;
    bool unit = k_minor_gcd(p, p.m()) == BinaryForm::one();
    CHECK(unit == right_only);
    (right_only ? positives : negatives)++;
  }
  CHECK(positives > 0);
  CHECK(negatives > 0);
}
