#include "kron/kcf.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

#include "kron/errors.hpp"

namespace kron {

int EigenEntry::weight() const { return std::accumulate(sig.begin(), sig.end(), 0); }

int KroneckerStructure::q() const {
  int s = 0;
  for (const auto& e : eigen) s += e.weight();
  return s;
}

int KroneckerStructure::m() const {
  int s = h + q();
  for (int e : eps) s += e;
  for (int v : nu) s += v + 1;
  return s;
}

int KroneckerStructure::n() const {
  int s = g + q();
  for (int e : eps) s += e + 1;
  for (int v : nu) s += v;
  return s;
}

void KroneckerStructure::canonicalize() {
  std::sort(eps.begin(), eps.end());
  std::sort(nu.begin(), nu.end());
  for (auto& e : eigen) std::sort(e.sig.begin(), e.sig.end(), std::greater<>());
  std::sort(eigen.begin(), eigen.end(), [](const EigenEntry& a, const EigenEntry& b) { return a.x < b.x; });
}

std::string KroneckerStructure::to_string() const {
  std::vector<std::string> parts;
  if (h || g) parts.push_back("0(" + std::to_string(h) + "x" + std::to_string(g) + ")");
  for (int e : eps) parts.push_back("L" + std::to_string(e));
  for (int v : nu) parts.push_back("LT" + std::to_string(v));
  for (const auto& e : eigen)
    for (int s : e.sig)
      parts.push_back(e.x.is_infinite() ? "N" + std::to_string(s)
                                        : "M" + std::to_string(s) + "(" + e.x.to_string() + ")");
  if (parts.empty()) return "empty";
  std::string out = parts[0];
  for (size_t k = 1; k < parts.size(); ++k) out += "+" + parts[k];
  return out;
}

// ---------------------------------------------------------------- eigenvalues

std::vector<EigenEntry> eigen_structure_from_invariants(const std::vector<BinaryForm>& invariants) {
  std::map<Eigenvalue, SizeSignature> sigs;
  for (const BinaryForm& e : invariants) {
    FormFactorization f = factor_form(e);
    if (!f.splits())
      fail(ErrorKind::NonSplitting, "invariant polynomial has a factor without roots in Q(i): " + f.residual.to_string());
    if (f.mu_power > 0) sigs[Eigenvalue::infinity()].push_back(f.mu_power);
    for (const auto& [x, mult] : f.roots) sigs[Eigenvalue(x)].push_back(mult);
  }
  std::vector<EigenEntry> out;
  for (auto& [x, sig] : sigs) {
    std::sort(sig.begin(), sig.end(), std::greater<>());
    out.push_back({x, sig});
  }
  return out;
}

std::vector<EigenEntry> eigen_structure(const Pencil& p) {
  return eigen_structure_from_invariants(invariant_polynomials(p));
}

// ---------------------------------------------------------------- minimal indices

namespace {

// Coefficient system of P x = 0 for x of degree d: block row k collects mu^(d+1-k) lambda^k.
Matrix degree_system(const Pencil& p, int d) {
  const size_t m = p.m(), n = p.n();
  const size_t D = static_cast<size_t>(d);
  Matrix sys((D + 2) * m, (D + 1) * n);
  for (size_t j = 0; j <= D; ++j) {
    sys.set_block(j * m, j * n, p.R);
    sys.set_block((j + 1) * m, j * n, p.S);
  }
  return sys;
}

std::vector<int> minimal_indices_with_rank(const Pencil& p, size_t r) {
  std::vector<int> out;
  const size_t target = p.n() - r;
  size_t prev_nullity = 0, prev_count = 0;
  for (int d = 0; out.size() < target; ++d) {
    if (d > static_cast<int>(p.n())) throw std::logic_error("minimal index search exceeded the degree cap n");
    Matrix sys = degree_system(p, d);
    size_t nullity = sys.cols() - rank(std::move(sys));
    size_t count = nullity - prev_nullity;  // indices <= d
    for (size_t k = prev_count; k < count; ++k) out.push_back(d);
    prev_nullity = nullity;
    prev_count = count;
  }
  return out;
}

Pencil oriented(const Pencil& p, Side side) { return side == Side::Right ? p : p.transpose(); }

}  // namespace

std::vector<int> minimal_indices(const Pencil& p, Side side) {
  Pencil q = oriented(p, side);
  return minimal_indices_with_rank(q, pencil_rank(q));
}

std::vector<NullVector> minimal_null_basis(const Pencil& p_in, Side side) {
  const Pencil p = oriented(p_in, side);
  const size_t n = p.n();
  const size_t target = n - pencil_rank(p);
  std::vector<NullVector> basis;
  for (int d = 0; basis.size() < target; ++d) {
    if (d > static_cast<int>(n)) throw std::logic_error("minimal basis search exceeded the degree cap n");
    const size_t D = static_cast<size_t>(d);
    Matrix kernel = nullspace(degree_system(p, d));
    // shifts mu^a lambda^b y of the vectors already found
    std::vector<std::vector<Qi>> span;
    for (const auto& y : basis)
      for (int s = 0; s <= d - y.degree; ++s) {
        std::vector<Qi> v((D + 1) * n);
        for (int j = 0; j <= y.degree; ++j)
          for (size_t i = 0; i < n; ++i) v[static_cast<size_t>(j + s) * n + i] = y.coeffs(i, static_cast<size_t>(j));
        span.push_back(std::move(v));
      }
    auto span_rank = [&](const std::vector<std::vector<Qi>>& vs) {
      Matrix mtx(vs.size(), (D + 1) * n);
      for (size_t r = 0; r < vs.size(); ++r)
        for (size_t c = 0; c < vs[r].size(); ++c) mtx(r, c) = vs[r][c];
      return rank(std::move(mtx));
    };
    size_t current = span_rank(span);
    for (size_t col = 0; col < kernel.cols() && basis.size() < target; ++col) {
      std::vector<Qi> v((D + 1) * n);
      for (size_t r = 0; r < v.size(); ++r) v[r] = kernel(r, col);
      span.push_back(v);
      size_t next = span_rank(span);
      if (next == current) {
        span.pop_back();
        continue;
      }
      current = next;
      NullVector nv;
      nv.degree = d;
      nv.coeffs = Matrix(n, D + 1);
      for (size_t j = 0; j <= D; ++j)
        for (size_t i = 0; i < n; ++i) nv.coeffs(i, j) = v[j * n + i];
      basis.push_back(std::move(nv));
    }
  }
  return basis;
}

Matrix apply_to_null_vector(const Pencil& p, const NullVector& v) {
  // result column k is the coefficient of mu^(d+1-k) lambda^k
  const size_t D = static_cast<size_t>(v.degree);
  Matrix out(p.m(), D + 2);
  for (size_t j = 0; j <= D; ++j) {
    Matrix x = v.coeffs.block(0, j, v.coeffs.rows(), 1);
    Matrix rx = p.R * x, sx = p.S * x;
    for (size_t i = 0; i < p.m(); ++i) {
      out(i, j) += rx(i, 0);
      out(i, j + 1) += sx(i, 0);
    }
  }
  return out;
}

// ---------------------------------------------------------------- structure

KroneckerStructure kronecker_structure(const Pencil& p) {
  std::vector<BinaryForm> inv = invariant_polynomials(p);
  KroneckerStructure ks;
  ks.eigen = eigen_structure_from_invariants(inv);
  const size_t r = inv.size();
  for (int e : minimal_indices_with_rank(p, r)) (e == 0 ? ++ks.g : (ks.eps.push_back(e), 0));
  for (int v : minimal_indices_with_rank(p.transpose(), r)) (v == 0 ? ++ks.h : (ks.nu.push_back(v), 0));
  ks.canonicalize();
  if (ks.m() != static_cast<int>(p.m()) || ks.n() != static_cast<int>(p.n()))
    throw std::logic_error("Kronecker invariants violate the dimension count");
  return ks;
}

// ---------------------------------------------------------------- canonical blocks

Pencil block_L(int eps) {
  const size_t e = static_cast<size_t>(eps);
  Pencil b(e, e + 1);
  for (size_t i = 0; i < e; ++i) {
    b.S(i, i) = Qi(1);
    b.R(i, i + 1) = Qi(1);
  }
  return b;
}

Pencil block_LT(int nu) { return block_L(nu).transpose(); }

Pencil block_M(int e, const Qi& x) {
  const size_t s = static_cast<size_t>(e);
  Pencil b(s, s);
  for (size_t i = 0; i < s; ++i) {
    b.R(i, i) = x;
    b.S(i, i) = Qi(1);
    if (i + 1 < s) b.R(i, i + 1) = Qi(1);
  }
  return b;
}

Pencil block_N(int e) {
  const size_t s = static_cast<size_t>(e);
  Pencil b(s, s);
  for (size_t i = 0; i < s; ++i) {
    b.R(i, i) = Qi(1);
    if (i + 1 < s) b.S(i, i + 1) = Qi(1);
  }
  return b;
}

Pencil direct_sum(const std::vector<Pencil>& blocks) {
  size_t m = 0, n = 0;
  for (const auto& b : blocks) {
    m += b.m();
    n += b.n();
  }
  Pencil out(m, n);
  size_t r = 0, c = 0;
  for (const auto& b : blocks) {
    out.R.set_block(r, c, b.R);
    out.S.set_block(r, c, b.S);
    r += b.m();
    c += b.n();
  }
  return out;
}

Pencil assemble_kcf(const KroneckerStructure& ks_in) {
  KroneckerStructure ks = ks_in;
  ks.canonicalize();
  std::vector<Pencil> blocks;
  blocks.emplace_back(static_cast<size_t>(ks.h), static_cast<size_t>(ks.g));
  for (int e : ks.eps) blocks.push_back(block_L(e));
  for (int v : ks.nu) blocks.push_back(block_LT(v));
  for (const auto& e : ks.eigen)
    for (int s : e.sig) blocks.push_back(e.x.is_infinite() ? block_N(s) : block_M(s, e.x.value()));
  return direct_sum(blocks);
}

// ---------------------------------------------------------------- reduction with witnesses

bool find_equivalence(const Pencil& p, const Pencil& target, Matrix& B, Matrix& C) {
  // Solve p X = Y target for X (n x n), Y (m x m); a generic solution is invertible when
  // the pencils are strictly equivalent. Then B = Y^-1, C = X^T.
  const size_t m = p.m(), n = p.n();
  if (target.m() != m || target.n() != n) fail(ErrorKind::ShapeMismatch, "pencils differ in shape");
  const size_t nx = n * n, unknowns = n * n + m * m;
  Matrix sys(2 * m * n, unknowns);
  for (int part = 0; part < 2; ++part) {
    const Matrix& P = part == 0 ? p.R : p.S;
    const Matrix& K = part == 0 ? target.R : target.S;
    for (size_t i = 0; i < m; ++i)
      for (size_t j = 0; j < n; ++j) {
        const size_t row = static_cast<size_t>(part) * m * n + i * n + j;
        for (size_t a = 0; a < n; ++a)
          if (!P(i, a).is_zero()) sys(row, a * n + j) += P(i, a);
        for (size_t b = 0; b < m; ++b)
          if (!K(b, j).is_zero()) sys(row, nx + i * m + b) -= K(b, j);
      }
  }
  Matrix basis = nullspace(sys);
  if (basis.cols() == 0) return false;
  std::mt19937_64 rng(0x5eed1234ULL);
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<Qi> coef(basis.cols());
    for (auto& c : coef) c = Qi(static_cast<long>(rng() % 9) - 4);
    Matrix X(n, n), Y(m, m);
    for (size_t v = 0; v < unknowns; ++v) {
      Qi val;
      for (size_t k = 0; k < basis.cols(); ++k)
        if (!basis(v, k).is_zero() && !coef[k].is_zero()) val += basis(v, k) * coef[k];
      if (v < nx) X(v / n, v % n) = val;
      else Y((v - nx) / m, (v - nx) % m) = val;
    }
    if (determinant(X).is_zero() || determinant(Y).is_zero()) continue;
    B = inverse(Y);
    C = X.transpose();
    return true;
  }
  return false;
}

KcfReduction kcf_reduce(const Pencil& p) {
  KcfReduction out;
  out.structure = kronecker_structure(p);
  out.kcf = assemble_kcf(out.structure);
  if (!find_equivalence(p, out.kcf, out.B, out.C)) throw std::logic_error("no invertible equivalence to the KCF found");
  if (!(apply_bc(p, out.B, out.C) == out.kcf)) throw std::logic_error("KCF witness failed to verify");
  return out;
}

bool strictly_equivalent(const Pencil& p1, const Pencil& p2) {
  if (p1.m() != p2.m() || p1.n() != p2.n()) fail(ErrorKind::ShapeMismatch, "pencils differ in shape");
  return kronecker_structure(p1) == kronecker_structure(p2);
}

}  // namespace kron
