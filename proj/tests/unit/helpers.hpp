#pragma once

#include <array>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "kron/errors.hpp"
#include "kron/kcf.hpp"
#include "kron/pencil.hpp"

namespace testing_util {

using namespace kron;

// Entry syntax: "0", "l", "m", "3m", "-l", "l+m", "2m-l", "im" (coefficient i). Empty entries are zero.
inline void parse_entry(const std::string& text, Qi& mu, Qi& lam) {
  mu = Qi(0);
  lam = Qi(0);
  std::string s;
  for (char ch : text)
    if (ch != ' ') s += ch;
  if (s.empty() || s == "0" || s == ".") return;
  size_t pos = 0;
  while (pos < s.size()) {
    size_t end = pos + 1;
    while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
    std::string term = s.substr(pos, end - pos);
    char var = term.back();
    std::string coef = term.substr(0, term.size() - 1);
    Qi c(1);
    if (coef == "+" || coef.empty()) c = Qi(1);
    else if (coef == "-") c = Qi(-1);
    else c = Qi::parse(coef[0] == '+' ? coef.substr(1) : coef);
    (var == 'm' ? mu : lam) += c;
    pos = end;
  }
}

inline Pencil pencil(const std::vector<std::vector<std::string>>& rows) {
  Pencil p(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j) parse_entry(rows[i][j], p.R(i, j), p.S(i, j));
  return p;
}

inline Pencil example_4x5() {
  return pencil({{"l", "m", "0", "0", "l"},
                 {"l", "l", "m", "l+m", "0"},
                 {"3m", "-l", "-m", "2m", "0"},
                 {"m", "0", "0", "0", "2m"}});
}

inline Qi small_scalar(std::mt19937_64& rng, bool complex = true) {
  long re = static_cast<long>(rng() % 7) - 3;
  long im = complex ? static_cast<long>(rng() % 3) - 1 : 0;
  return Qi(mpq_class(re), mpq_class(im));
}

inline Matrix random_matrix(std::mt19937_64& rng, size_t r, size_t c, bool complex = true) {
  Matrix a(r, c);
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < c; ++j) a(i, j) = small_scalar(rng, complex);
  return a;
}

inline Matrix random_invertible(std::mt19937_64& rng, size_t n, bool complex = true) {
  for (;;) {
    Matrix a = random_matrix(rng, n, n, complex);
    if (!determinant(a).is_zero()) return a;
  }
}

inline Pencil random_pencil(std::mt19937_64& rng, size_t m, size_t n, bool complex = true) {
  return {random_matrix(rng, m, n, complex), random_matrix(rng, m, n, complex)};
}

inline Pencil scramble(std::mt19937_64& rng, const Pencil& p) {
  return apply_bc(p, random_invertible(rng, p.m()), random_invertible(rng, p.n()));
}

inline KroneckerStructure make_structure(std::vector<int> eps, std::vector<int> nu,
                                         std::vector<std::pair<std::string, SizeSignature>> eigen, int h = 0,
                                         int g = 0) {
  KroneckerStructure ks;
  ks.h = h;
  ks.g = g;
  ks.eps = std::move(eps);
  ks.nu = std::move(nu);
  for (auto& [x, sig] : eigen) ks.eigen.push_back({Eigenvalue::parse(x), sig});
  ks.canonicalize();
  return ks;
}

}  // namespace testing_util

namespace testing_util {

inline kron::StateTensor omega_state() {
  kron::StateTensor s(4, 6);
  for (auto [a, b, c] : std::vector<std::array<size_t, 3>>{
           {1, 0, 0}, {0, 0, 1}, {1, 1, 2}, {0, 1, 3}, {1, 2, 3}, {0, 2, 4}, {1, 3, 5}})
    s(a, b, c) = kron::Qi(1);
  return s;
}

// |0>(D (x) 1)|Phi+> + |1>|Phi+> for D = diag(xs)
inline kron::StateTensor diagonal_state(const std::vector<kron::Qi>& xs) {
  kron::StateTensor s(xs.size(), xs.size());
  for (size_t k = 0; k < xs.size(); ++k) {
    s(0, k, k) = xs[k];
    s(1, k, k) = kron::Qi(1);
  }
  return s;
}

inline kron::StateTensor random_local(std::mt19937_64& rng, const kron::StateTensor& s) {
  return kron::apply_local(s, random_invertible(rng, 2), random_invertible(rng, s.m()), random_invertible(rng, s.n()));
}

}  // namespace testing_util
