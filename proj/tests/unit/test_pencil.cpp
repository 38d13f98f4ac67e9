#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "kron/pencil.hpp"

using namespace kron;
using testing_util::pencil;

namespace {

StateTensor state(size_t m, size_t n, std::initializer_list<std::array<size_t, 3>> ones) {
  StateTensor s(m, n);
  for (auto [a, b, c] : ones) s(a, b, c) = Qi(1);
  return s;
}

BinaryForm lin(long x) { return BinaryForm::linear(Qi(x)); }

}  // namespace

TEST_CASE("W and GHZ pencils") {
  Pencil w = pencil_from_state(state(2, 2, {{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}));
  CHECK(w == pencil({{"l", "m"}, {"m", "0"}}));
  Pencil ghz = pencil_from_state(state(2, 2, {{0, 0, 0}, {1, 1, 1}}));
  CHECK(ghz == pencil({{"m", "0"}, {"0", "l"}}));
  CHECK(state_from_pencil(w) == state(2, 2, {{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}));

  Pencil e00 = pencil_from_state(state(2, 2, {{0, 0, 0}}));
  CHECK(e00.S.is_zero());
  CHECK(e00.R == Matrix{{Qi(1), Qi(0)}, {Qi(0), Qi(0)}});
}

TEST_CASE("state and pencil round trip") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    Pencil p = testing_util::random_pencil(rng, 1 + rng() % 4, 1 + rng() % 5);
    CHECK(pencil_from_state(state_from_pencil(p)) == p);
  }
}

TEST_CASE("minor gcds of the worked 4x5 pencil") {
  Pencil p = testing_util::example_4x5();
  CHECK(k_minor_gcd(p, 0) == BinaryForm::one());
  CHECK(k_minor_gcd(p, 4) == BinaryForm::mu() * lin(3));
  CHECK(k_minor_gcd(p, 3) == BinaryForm::one());
  CHECK(pencil_rank(p) == 4);
  auto e = invariant_polynomials(p);
  REQUIRE(e.size() == 4);
  CHECK(e[0] == BinaryForm::one());
  CHECK(e[1] == BinaryForm::one());
  CHECK(e[2] == BinaryForm::one());
  CHECK(e[3] == BinaryForm::mu() * lin(3));
  CHECK(invariant_polynomials_by_minors(p) == e);
}

TEST_CASE("diag(lambda, mu) invariant polynomials") {
  auto e = invariant_polynomials(pencil({{"l", "0"}, {"0", "m"}}));
  REQUIRE(e.size() == 2);
  CHECK(e[0] == BinaryForm::one());
  CHECK(e[1] == BinaryForm::mu() * lin(0));
  CHECK(pencil_rank(Pencil(3, 2)) == 0);
}

TEST_CASE("companion pencil with distinct roots has a single nontrivial invariant") {
  // finite part t^3 - 7t - 6, eigenvalues 1, 2, -3
  Pencil p = pencil({{"l", "m", "0"}, {"0", "l", "m"}, {"-6m", "7m", "l"}});
  auto e = invariant_polynomials(p);
  REQUIRE(e.size() == 3);
  CHECK(e[0] == BinaryForm::one());
  CHECK(e[1] == BinaryForm::one());
  CHECK(e[2] == lin(1) * lin(2) * lin(-3));
}

TEST_CASE("alice operator examples") {
  Pencil l1l2 = pencil({{"l", "m", "0", "0", "0"}, {"0", "0", "l", "m", "0"}, {"0", "0", "0", "l", "m"}});
  Pencil expected = pencil({{"m", "m+l", "0", "0", "0"}, {"0", "0", "m", "m+l", "0"}, {"0", "0", "0", "m", "m+l"}});
  CHECK(apply_alice(l1l2, MoebiusMap{Qi(1), Qi(1), Qi(1), Qi(0)}) == expected);
  CHECK(apply_alice(l1l2, MoebiusMap::identity()) == l1l2);
  Pencil swapped = apply_alice(l1l2, MoebiusMap{Qi(0), Qi(1), Qi(1), Qi(0)});
  CHECK(swapped.R == l1l2.S);
  CHECK(swapped.S == l1l2.R);
  CHECK_THROWS_AS(apply_alice(l1l2, MoebiusMap{Qi(1), Qi(1), Qi(1), Qi(1)}), Error);
}

TEST_CASE("alice operator agrees with the local action on amplitudes") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 30; ++t) {
    Pencil p = testing_util::random_pencil(rng, 2 + rng() % 2, 2 + rng() % 3);
    Matrix a = testing_util::random_invertible(rng, 2);
    Matrix b = testing_util::random_invertible(rng, p.m());
    Matrix c = testing_util::random_invertible(rng, p.n());
    StateTensor s = apply_local(state_from_pencil(p), a, b, c);
    CHECK(pencil_from_state(s) == apply_bc(apply_alice(p, MoebiusMap::from_matrix(a)), b, c));
  }
}

TEST_CASE("apply_bc examples") {
  Pencil col = pencil({{"m"}, {"l"}});
  Matrix swap{{Qi(0), Qi(1)}, {Qi(1), Qi(0)}};
  CHECK(apply_bc(col, swap, Matrix::identity(1)) == pencil({{"l"}, {"m"}}));
  CHECK(apply_bc(col, Matrix::identity(2), Matrix::identity(1)) == col);
  CHECK_THROWS_AS(apply_bc(col, Matrix::identity(3), Matrix::identity(1)), Error);
}

TEST_CASE("moebius maps") {
  Eigenvalue z1(Qi(2)), z2(Qi::i()), z3 = Eigenvalue::infinity();
  MoebiusMap f = MoebiusMap::to_zero_one_inf(z1, z2, z3);
  CHECK(f(z1) == Eigenvalue(Qi(0)));
  CHECK(f(z2) == Eigenvalue(Qi(1)));
  CHECK(f(z3).is_infinite());
  MoebiusMap g = MoebiusMap::through({z1, z2, z3}, {Eigenvalue(Qi(5)), Eigenvalue::infinity(), Eigenvalue(Qi(-1))});
  CHECK(g(z1) == Eigenvalue(Qi(5)));
  CHECK(g(z2).is_infinite());
  CHECK(g(z3) == Eigenvalue(Qi(-1)));
  CHECK((g.inverse() * g)(Eigenvalue(Qi(7))) == Eigenvalue(Qi(7)));
}

TEST_CASE("alice maps eigenvalues through the moebius map") {
  // M1(2) + N1 under x -> (x + 1)/(x - 1): 2 -> 3, inf -> 1
  Pencil p = pencil({{"2m+l", "0"}, {"0", "m"}});
  MoebiusMap f{Qi(1), Qi(1), Qi(1), Qi(-1)};
  auto e = invariant_polynomials(apply_alice(p, f));
  CHECK(e.back() == lin(3) * lin(1));
}

TEST_CASE("local ranks") {
  CHECK(local_ranks(state(2, 2, {{0, 0, 0}, {1, 1, 1}})) == LocalRanks{2, 2, 2});
  CHECK(local_ranks(state(2, 2, {{0, 0, 0}, {0, 1, 1}})) == LocalRanks{1, 2, 2});
}

TEST_CASE("minor route and Smith route agree") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 60; ++t) {
    size_t m = 1 + rng() % 4, n = m + rng() % 3;
    Pencil p = testing_util::random_pencil(rng, m, n, t % 2 == 0);
    // thin out entries so that nontrivial divisors show up
    for (size_t i = 0; i < m; ++i)
      for (size_t j = 0; j < n; ++j)
        if (rng() % 2) p.R(i, j) = Qi(0);
    if (t % 3 == 0) p = p.transpose();
    CHECK(invariant_polynomials(p) == invariant_polynomials_by_minors(p));
  }
}

TEST_CASE("determinantal divisors form a divisibility chain and are strict invariants") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 30; ++t) {
    Pencil p = testing_util::random_pencil(rng, 3, 3 + rng() % 2, false);
    for (size_t i = 0; i < p.m(); ++i) p.S(i, i) = Qi(0);
    size_t r = pencil_rank(p);
    for (size_t k = 1; k <= r; ++k) CHECK(k_minor_gcd(p, k - 1).divides(k_minor_gcd(p, k)));
    Pencil q = testing_util::scramble(rng, p);
    CHECK(pencil_rank(q) == r);
    for (size_t k = 0; k <= r; ++k) CHECK(k_minor_gcd(q, k) == k_minor_gcd(p, k));
    Pencil a = apply_alice(p, MoebiusMap{Qi(1), Qi(2), Qi(-1), Qi(1)});
    CHECK(a.m() == p.m());
    CHECK(k_minor_gcd(a, r).degree() == k_minor_gcd(p, r).degree());
  }
}
