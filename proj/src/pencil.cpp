#include "kron/pencil.hpp"

#include <algorithm>
#include <numeric>

#include "kron/errors.hpp"

namespace kron {

bool StateTensor::is_zero() const {
  return std::all_of(amp_.begin(), amp_.end(), [](const Qi& x) { return x.is_zero(); });
}

Pencil::Pencil(Matrix r, Matrix s) : R(std::move(r)), S(std::move(s)) {
  if (R.rows() != S.rows() || R.cols() != S.cols()) fail(ErrorKind::ShapeMismatch, "R and S differ in shape");
}

BinaryForm Pencil::entry(size_t i, size_t j) const { return BinaryForm({R(i, j), S(i, j)}); }

Matrix Pencil::eval(const Qi& mu, const Qi& lambda) const {
  Matrix out(m(), n());
  for (size_t i = 0; i < m(); ++i)
    for (size_t j = 0; j < n(); ++j) out(i, j) = mu * R(i, j) + lambda * S(i, j);
  return out;
}

Pencil Pencil::rows_cols(const std::vector<size_t>& rows, const std::vector<size_t>& cols) const {
  Pencil out(rows.size(), cols.size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols.size(); ++j) {
      out.R(i, j) = R(rows[i], cols[j]);
      out.S(i, j) = S(rows[i], cols[j]);
    }
  return out;
}

std::string Pencil::to_string() const {
  std::string out;
  for (size_t i = 0; i < m(); ++i) {
    out += "[";
    for (size_t j = 0; j < n(); ++j) {
      BinaryForm e = entry(i, j);
      out += (j ? ", " : "") + (e.is_zero() ? std::string(".") : e.to_string());
    }
    out += "]\n";
  }
  return out;
}

// ---------------------------------------------------------------- Moebius maps

MoebiusMap MoebiusMap::to_zero_one_inf(const Eigenvalue& z1, const Eigenvalue& z2, const Eigenvalue& z3) {
  if (z1 == z2 || z1 == z3 || z2 == z3) fail(ErrorKind::SingularMap, "three-point map needs distinct points");
  if (z1.is_infinite()) {
    // (z2 - z3) / (x - z3)
    return {Qi(0), z2.value() - z3.value(), Qi(1), -z3.value()};
  }
  if (z2.is_infinite()) {
    // (x - z1) / (x - z3)
    return {Qi(1), -z1.value(), Qi(1), -z3.value()};
  }
  if (z3.is_infinite()) {
    // (x - z1) / (z2 - z1)
    return {Qi(1), -z1.value(), Qi(0), z2.value() - z1.value()};
  }
  const Qi a = z2.value() - z3.value(), c = z2.value() - z1.value();
  return {a, -z1.value() * a, c, -z3.value() * c};
}

MoebiusMap MoebiusMap::through(const std::array<Eigenvalue, 3>& z, const std::array<Eigenvalue, 3>& w) {
  return to_zero_one_inf(w[0], w[1], w[2]).inverse() * to_zero_one_inf(z[0], z[1], z[2]);
}

Eigenvalue MoebiusMap::operator()(const Eigenvalue& x) const {
  if (x.is_infinite()) {
    if (gamma.is_zero()) return Eigenvalue::infinity();
    return Eigenvalue(alpha / gamma);
  }
  Qi den = gamma * x.value() + delta;
  if (den.is_zero()) return Eigenvalue::infinity();
  return Eigenvalue((alpha * x.value() + beta) / den);
}

MoebiusMap MoebiusMap::inverse() const {
  if (det().is_zero()) fail(ErrorKind::SingularMap, "singular Moebius map");
  return {delta, -beta, -gamma, alpha};
}

MoebiusMap operator*(const MoebiusMap& f, const MoebiusMap& g) {
  return {f.alpha * g.alpha + f.beta * g.gamma, f.alpha * g.beta + f.beta * g.delta,
          f.gamma * g.alpha + f.delta * g.gamma, f.gamma * g.beta + f.delta * g.delta};
}

MoebiusMap MoebiusMap::from_matrix(const Matrix& a) {
  if (a.rows() != 2 || a.cols() != 2) fail(ErrorKind::ShapeMismatch, "Alice's operator must be 2x2");
  return {a(0, 0), a(0, 1), a(1, 0), a(1, 1)};
}

// ---------------------------------------------------------------- state <-> pencil and local actions

Pencil pencil_from_state(const StateTensor& s) {
  Pencil p(s.m(), s.n());
  for (size_t j = 0; j < s.m(); ++j)
    for (size_t k = 0; k < s.n(); ++k) {
      p.R(j, k) = s(0, j, k);
      p.S(j, k) = s(1, j, k);
    }
  return p;
}

StateTensor state_from_pencil(const Pencil& p) {
  StateTensor s(p.m(), p.n());
  for (size_t j = 0; j < p.m(); ++j)
    for (size_t k = 0; k < p.n(); ++k) {
      s(0, j, k) = p.R(j, k);
      s(1, j, k) = p.S(j, k);
    }
  return s;
}

Pencil apply_alice(const Pencil& p, const MoebiusMap& a) {
  if (a.det().is_zero()) fail(ErrorKind::SingularMap, "Alice's operator is singular");
  return {a.alpha * p.R + a.beta * p.S, a.gamma * p.R + a.delta * p.S};
}

Pencil apply_bc(const Pencil& p, const Matrix& B, const Matrix& C) {
  if (B.cols() != p.m() || C.cols() != p.n()) fail(ErrorKind::ShapeMismatch, "apply_bc: operator shapes do not match the pencil");
  Matrix Ct = C.transpose();
  return {B * p.R * Ct, B * p.S * Ct};
}

StateTensor apply_local(const StateTensor& s, const Matrix& A, const Matrix& B, const Matrix& C) {
  if (A.rows() != 2 || A.cols() != 2 || B.cols() != s.m() || C.cols() != s.n())
    fail(ErrorKind::ShapeMismatch, "local operators do not match the state");
  const size_t m2 = B.rows(), n2 = C.rows();
  // contract Claire, then Bob, then Alice
  std::vector<Qi> t1(2 * s.m() * n2);
  for (size_t a = 0; a < 2; ++a)
    for (size_t j = 0; j < s.m(); ++j)
      for (size_t k = 0; k < s.n(); ++k) {
        const Qi& v = s(a, j, k);
        if (v.is_zero()) continue;
        for (size_t k2 = 0; k2 < n2; ++k2)
          if (!C(k2, k).is_zero()) t1[(a * s.m() + j) * n2 + k2] += C(k2, k) * v;
      }
  std::vector<Qi> t2(2 * m2 * n2);
  for (size_t a = 0; a < 2; ++a)
    for (size_t j = 0; j < s.m(); ++j)
      for (size_t k2 = 0; k2 < n2; ++k2) {
        const Qi& v = t1[(a * s.m() + j) * n2 + k2];
        if (v.is_zero()) continue;
        for (size_t j2 = 0; j2 < m2; ++j2)
          if (!B(j2, j).is_zero()) t2[(a * m2 + j2) * n2 + k2] += B(j2, j) * v;
      }
  StateTensor out(m2, n2);
  for (size_t a2 = 0; a2 < 2; ++a2)
    for (size_t a = 0; a < 2; ++a) {
      if (A(a2, a).is_zero()) continue;
      for (size_t j2 = 0; j2 < m2; ++j2)
        for (size_t k2 = 0; k2 < n2; ++k2) {
          const Qi& v = t2[(a * m2 + j2) * n2 + k2];
          if (!v.is_zero()) out(a2, j2, k2) += A(a2, a) * v;
        }
    }
  return out;
}

// ---------------------------------------------------------------- minors

namespace {

// Interpolation matrix mapping values at t = 0..k to coefficients of a degree-k polynomial.
Matrix interpolation_matrix(size_t k) {
  Matrix v(k + 1, k + 1);
  for (size_t i = 0; i <= k; ++i) {
    Qi x(static_cast<long>(i)), pw(1);
    for (size_t j = 0; j <= k; ++j) {
      v(i, j) = pw;
      pw *= x;
    }
  }
  return inverse(v);
}

void next_combination(std::vector<size_t>& c, size_t n, bool& done) {
  size_t k = c.size();
  size_t i = k;
  while (i > 0 && c[i - 1] == n - k + i - 1) --i;
  if (i == 0) {
    done = true;
    return;
  }
  ++c[i - 1];
  for (size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
}

}  // namespace

BinaryForm k_minor_gcd(const Pencil& p, size_t k) {
  if (k > std::min(p.m(), p.n())) fail(ErrorKind::IndexOutOfRange, "minor order exceeds pencil dimensions");
  if (k == 0) return BinaryForm::one();
  const Matrix interp = interpolation_matrix(k);
  std::vector<Matrix> evals;
  for (size_t t = 0; t <= k; ++t) evals.push_back(p.eval(Qi(1), Qi(static_cast<long>(t))));

  BinaryForm g = BinaryForm::zero();
  std::vector<size_t> rows(k), cols(k);
  std::iota(rows.begin(), rows.end(), 0);
  for (bool rdone = false; !rdone; next_combination(rows, p.m(), rdone)) {
    std::iota(cols.begin(), cols.end(), 0);
    for (bool cdone = false; !cdone; next_combination(cols, p.n(), cdone)) {
      Matrix vals(k + 1, 1);
      for (size_t t = 0; t <= k; ++t) {
        Matrix sub(k, k);
        for (size_t i = 0; i < k; ++i)
          for (size_t j = 0; j < k; ++j) sub(i, j) = evals[t](rows[i], cols[j]);
        vals(t, 0) = determinant(std::move(sub));
      }
      Matrix coeff = interp * vals;
      std::vector<Qi> c(k + 1);
      for (size_t j = 0; j <= k; ++j) c[j] = coeff(j, 0);
      BinaryForm minor(std::move(c));
      if (minor.is_zero()) continue;
      g = form_gcd(g, minor);
      if (g.degree() == 0) return BinaryForm::one();
    }
  }
  return g;
}

size_t pencil_rank(const Pencil& p) {
  // The rank drops only at roots of D_r, which has degree <= min(m, n).
  size_t best = 0;
  const size_t pts = std::min(p.m(), p.n()) + 1;
  for (size_t t = 0; t < pts; ++t) best = std::max(best, rank(p.eval(Qi(1), Qi(static_cast<long>(t)))));
  return best;
}

// ---------------------------------------------------------------- Smith form

std::vector<Poly> smith_invariant_factors(std::vector<std::vector<Poly>> a) {
  const size_t m = a.size();
  const size_t n = m ? a[0].size() : 0;
  std::vector<Poly> out;
  auto swap_rows = [&](size_t i, size_t j) { std::swap(a[i], a[j]); };
  auto swap_cols = [&](size_t i, size_t j) {
    for (auto& row : a) std::swap(row[i], row[j]);
  };
  for (size_t k = 0; k < std::min(m, n); ++k) {
    for (;;) {
      // pivot of minimal degree
      size_t pi = m, pj = n;
      int best = -1;
      for (size_t i = k; i < m; ++i)
        for (size_t j = k; j < n; ++j)
          if (!a[i][j].is_zero() && (best < 0 || a[i][j].degree() < best)) {
            best = a[i][j].degree();
            pi = i;
            pj = j;
          }
      if (best < 0) return out;
      if (pi != k) swap_rows(pi, k);
      if (pj != k) swap_cols(pj, k);
      const Poly piv = a[k][k];
      bool clean = true;
      for (size_t i = k + 1; i < m; ++i) {
        if (a[i][k].is_zero()) continue;
        Poly q = Poly::divmod(a[i][k], piv).first;
        for (size_t j = k; j < n; ++j)
          if (!a[k][j].is_zero()) a[i][j] = a[i][j] - q * a[k][j];
        if (!a[i][k].is_zero()) clean = false;
      }
      for (size_t j = k + 1; j < n; ++j) {
        if (a[k][j].is_zero()) continue;
        Poly q = Poly::divmod(a[k][j], piv).first;
        for (size_t i = k; i < m; ++i)
          if (!a[i][k].is_zero()) a[i][j] = a[i][j] - q * a[i][k];
        if (!a[k][j].is_zero()) clean = false;
      }
      if (!clean) continue;
      // the pivot must divide the whole trailing block
      bool divides_all = true;
      for (size_t i = k + 1; i < m && divides_all; ++i)
        for (size_t j = k + 1; j < n; ++j)
          if (!a[i][j].is_zero() && !Poly::divmod(a[i][j], piv).second.is_zero()) {
            for (size_t jj = k; jj < n; ++jj) a[k][jj] = a[k][jj] + a[i][jj];
            divides_all = false;
            break;
          }
      if (divides_all) break;
    }
    out.push_back(a[k][k].monic());
  }
  return out;
}

namespace {

std::vector<std::vector<Poly>> dehomogenise(const Matrix& constant, const Matrix& linear) {
  std::vector<std::vector<Poly>> a(constant.rows(), std::vector<Poly>(constant.cols()));
  for (size_t i = 0; i < constant.rows(); ++i)
    for (size_t j = 0; j < constant.cols(); ++j) a[i][j] = Poly({constant(i, j), linear(i, j)});
  return a;
}

}  // namespace

std::vector<BinaryForm> invariant_polynomials(const Pencil& p) {
  // mu = 1: R + t S carries the finite elementary divisors
  std::vector<Poly> fin = smith_invariant_factors(dehomogenise(p.R, p.S));
  // lambda = 1: S + t R; the power of t in each factor is the power of mu
  std::vector<Poly> swapped = smith_invariant_factors(dehomogenise(p.S, p.R));
  if (fin.size() != swapped.size()) throw std::logic_error("Smith forms disagree on the rank");
  std::vector<BinaryForm> out;
  for (size_t k = 0; k < fin.size(); ++k) out.push_back(BinaryForm::from_poly(swapped[k].low_order(), fin[k]));
  return out;
}

std::vector<BinaryForm> invariant_polynomials_by_minors(const Pencil& p) {
  const size_t top = std::min(p.m(), p.n());
  if (top > 6) fail(ErrorKind::ScopeViolation, "minor enumeration is limited to min(m, n) <= 6");
  std::vector<BinaryForm> out;
  BinaryForm prev = BinaryForm::one();
  for (size_t k = 1; k <= top; ++k) {
    BinaryForm d = k_minor_gcd(p, k);
    if (d.is_zero()) break;
    auto e = BinaryForm::divide(d, prev);
    if (!e) throw std::logic_error("D_{k-1} does not divide D_k");
    out.push_back(e->normalized());
    prev = d;
  }
  return out;
}

BinaryForm determinantal_divisor(const std::vector<BinaryForm>& invariants, size_t k) {
  if (k > invariants.size()) return BinaryForm::zero();
  BinaryForm d = BinaryForm::one();
  for (size_t j = 0; j < k; ++j) d = d * invariants[j];
  return d.normalized();
}

// ---------------------------------------------------------------- local ranks

LocalRanks local_ranks(const StateTensor& s) {
  LocalRanks r;
  Pencil p = pencil_from_state(s);
  Matrix ga(2, 2);
  for (size_t a = 0; a < 2; ++a)
    for (size_t b = 0; b < 2; ++b)
      for (size_t j = 0; j < s.m(); ++j)
        for (size_t k = 0; k < s.n(); ++k) ga(a, b) += s(a, j, k) * s(b, j, k).conj();
  r.a = rank(ga);
  Matrix rh = p.R.conj().transpose(), sh = p.S.conj().transpose();
  r.b = rank(p.R * rh + p.S * sh);
  r.c = rank(p.R.transpose() * p.R.conj() + p.S.transpose() * p.S.conj());
  return r;
}

}  // namespace kron
