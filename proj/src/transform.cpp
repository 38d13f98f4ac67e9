#include "kron/transform.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "kron/errors.hpp"
#include "kron/slocc.hpp"

namespace kron {

TransformWitness compose(const TransformWitness& first, const TransformWitness& second) {
  return {second.A * first.A, second.B * first.B, second.C * first.C};
}

bool verify_witness(const StateTensor& src, const TransformWitness& w, const StateTensor& dst) {
  if (w.A.rows() != 2 || w.A.cols() != 2 || w.B.cols() != src.m() || w.C.cols() != src.n()) return false;
  if (w.B.rows() != dst.m() || w.C.rows() != dst.n()) return false;
  StateTensor out = apply_local(src, w.A, w.B, w.C);
  // find the scalar on the first non-zero target amplitude, then compare everything
  std::optional<Qi> scale;
  for (size_t a = 0; a < 2 && !scale; ++a)
    for (size_t j = 0; j < dst.m() && !scale; ++j)
      for (size_t k = 0; k < dst.n() && !scale; ++k)
        if (!dst(a, j, k).is_zero()) scale = out(a, j, k) / dst(a, j, k);
  if (!scale || scale->is_zero()) return false;
  for (size_t a = 0; a < 2; ++a)
    for (size_t j = 0; j < dst.m(); ++j)
      for (size_t k = 0; k < dst.n(); ++k)
        if (out(a, j, k) != *scale * dst(a, j, k)) return false;
  return true;
}

bool verify_pencil_witness(const Pencil& src, const TransformWitness& w, const Pencil& dst) {
  return verify_witness(state_from_pencil(src), w, state_from_pencil(dst));
}

std::string EliminationSpec::to_string() const {
  std::ostringstream os;
  os << (side == EliminationSide::Column ? "column " : "row ") << index << " [";
  for (size_t k = 0; k < coeffs.size(); ++k) {
    if (k) os << ", ";
    os << (k == index ? std::string("*") : coeffs[k].to_string());
  }
  os << "]";
  return os.str();
}

Matrix elimination_matrix(const EliminationSpec& spec, size_t dim) {
  if (spec.index >= dim) fail(ErrorKind::IndexOutOfRange, "elimination index out of range");
  if (spec.coeffs.size() != dim) fail(ErrorKind::ShapeMismatch, "elimination needs one coefficient per line");
  Matrix e(dim - 1, dim);
  size_t r = 0;
  for (size_t k = 0; k < dim; ++k) {
    if (k == spec.index) continue;
    e(r, k) = 1;
    e(r, spec.index) = spec.coeffs[k];
    ++r;
  }
  return e;
}

Pencil eliminate(const Pencil& p, const EliminationSpec& spec) {
  if (spec.side == EliminationSide::Column) {
    Matrix e = elimination_matrix(spec, p.n());
    return apply_bc(p, Matrix::identity(p.m()), e);
  }
  Matrix e = elimination_matrix(spec, p.m());
  return apply_bc(p, e, Matrix::identity(p.n()));
}

std::vector<Qi> companion_coeffs(const std::vector<Qi>& xs) {
  std::vector<Qi> c{Qi(1)};  // prod (t - x), ascending powers
  for (const Qi& x : xs) {
    std::vector<Qi> next(c.size() + 1);
    for (size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= x * c[k];
    }
    c = std::move(next);
  }
  c.pop_back();
  return c;
}

namespace {

EliminationSpec companion_spec(const std::vector<Qi>& xs) {
  const size_t m = xs.size();
  std::vector<Qi> a = companion_coeffs(xs);
  EliminationSpec spec{EliminationSide::Column, m, std::vector<Qi>(m + 1)};
  for (size_t k = 0; k < m; ++k) spec.coeffs[k] = -a[k];
  return spec;
}

// Identity when every point is finite, otherwise a map whose preimages of xs are all finite.
MoebiusMap finite_frame(const std::vector<Eigenvalue>& xs) {
  if (std::none_of(xs.begin(), xs.end(), [](const Eigenvalue& x) { return x.is_infinite(); }))
    return MoebiusMap::identity();
  long z = 0;
  while (std::find(xs.begin(), xs.end(), Eigenvalue(Qi(z))) != xs.end()) ++z;
  return MoebiusMap{Qi(z), Qi(1), Qi(1), Qi(0)};  // y -> z + 1/y
}

std::vector<Qi> finite_preimages(const MoebiusMap& frame, const std::vector<Eigenvalue>& xs) {
  MoebiusMap inv = frame.inverse();
  std::vector<Qi> ys;
  for (const Eigenvalue& x : xs) {
    Eigenvalue y = inv(x);
    if (y.is_infinite()) fail(ErrorKind::ConditionViolated, "frame leaves an infinite preimage");
    ys.push_back(y.value());
  }
  return ys;
}

Pencil diagonal_pencil(const std::vector<Eigenvalue>& xs) {
  Pencil p(xs.size(), xs.size());
  for (size_t i = 0; i < xs.size(); ++i) {
    if (xs[i].is_infinite()) {
      p.R(i, i) = 1;
    } else {
      p.R(i, i) = xs[i].value();
      p.S(i, i) = 1;
    }
  }
  return p;
}

bool pairwise_distinct(std::vector<Eigenvalue> xs) {
  std::sort(xs.begin(), xs.end());
  return std::adjacent_find(xs.begin(), xs.end()) == xs.end();
}

}  // namespace

Pencil companion_pencil(const std::vector<Qi>& xs) {
  return eliminate(block_L(static_cast<int>(xs.size())), companion_spec(xs));
}

TransformWitness lm_to_distinct(int m, const std::vector<Eigenvalue>& xs) {
  if (m < 1 || xs.size() != static_cast<size_t>(m)) fail(ErrorKind::ShapeMismatch, "need m eigenvalues");
  if (!pairwise_distinct(xs)) fail(ErrorKind::DuplicateEigenvalues, "eigenvalues must be pairwise distinct");
  MoebiusMap frame = finite_frame(xs);
  std::vector<Qi> ys = finite_preimages(frame, xs);
  // P_m w_i = (y_i mu + lambda) w_i for the Vandermonde columns w_i = (1, y_i, ..., y_i^(m-1))
  Matrix v(m, m);
  for (int i = 0; i < m; ++i) {
    Qi pw(1);
    for (int r = 0; r < m; ++r) {
      v(i, r) = pw;
      pw *= ys[i];
    }
  }
  Matrix e = elimination_matrix(companion_spec(ys), m + 1);
  Matrix b = inverse(v.transpose());
  // Alice turns y_i mu + lambda into a multiple of x_i mu + lambda (or of mu); rescale the rows
  Matrix d(m, m);
  for (int i = 0; i < m; ++i) {
    Qi lam = frame.gamma * ys[i] + frame.delta;
    d(i, i) = lam.is_zero() ? (frame.alpha * ys[i] + frame.beta).inverse() : lam.inverse();
  }
  return {frame.matrix(), d * b, v * e};
}

TransformWitness lm_to_companion(int m, const std::vector<Eigenvalue>& xs, KroneckerStructure* result) {
  if (m < 1 || xs.size() != static_cast<size_t>(m)) fail(ErrorKind::ShapeMismatch, "need m eigenvalues");
  MoebiusMap frame = finite_frame(xs);
  std::vector<Qi> ys = finite_preimages(frame, xs);
  EliminationSpec spec = companion_spec(ys);
  KcfReduction red = kcf_reduce(apply_alice(eliminate(block_L(m), spec), frame));
  if (result) *result = red.structure;
  return {frame.matrix(), red.B, red.C * elimination_matrix(spec, m + 1)};
}

TransformWitness distinct_to_lm(const std::vector<Eigenvalue>& xs) {
  if (xs.size() < 2) fail(ErrorKind::ShapeMismatch, "need at least two eigenvalues");
  if (!pairwise_distinct(xs)) fail(ErrorKind::DuplicateEigenvalues, "eigenvalues must be pairwise distinct");
  const size_t m = xs.size() - 1;
  EliminationSpec spec{EliminationSide::Row, 0, std::vector<Qi>(m + 1, Qi(1))};
  KcfReduction red = kcf_reduce(eliminate(diagonal_pencil(xs), spec));
  KroneckerStructure want;
  want.eps = {static_cast<int>(m)};
  if (!(red.structure == want)) fail(ErrorKind::ConditionViolated, "row removal did not give L_m");
  return {Matrix::identity(2), red.B * elimination_matrix(spec, m + 1), red.C};
}

// ---- redistribution of right minimal indices ----

namespace {

std::optional<size_t> generic_split(const std::vector<int>& eps, const std::vector<int>& ep) {
  const size_t d = eps.size();
  for (size_t j = 0; j < d; ++j) {
    bool ok = true;
    for (size_t i = 0; i < j && ok; ++i) ok = eps[i] == ep[i];
    for (size_t i = j; i + 1 < d && ok; ++i) ok = eps[i + 1] <= ep[i];
    if (ok) return j;
  }
  return std::nullopt;
}

void add_identity(Matrix& a, size_t r, size_t c, size_t k) {
  for (size_t t = 0; t < k; ++t) a(r + t, c + t) += 1;
}

}  // namespace

bool generic_step_condition(const std::vector<int>& eps, const std::vector<int>& ep) {
  if (eps.size() < 2 || ep.size() + 1 != eps.size()) return false;
  int s1 = 0, s2 = 0;
  for (int e : eps) s1 += e;
  for (int e : ep) s2 += e;
  if (s1 != s2) return false;
  if (std::any_of(eps.begin(), eps.end(), [](int e) { return e < 1; })) return false;
  return generic_split(eps, ep).has_value();
}

GenericStep generic_step(int m, const std::vector<int>& eps, const std::vector<int>& ep) {
  int sum = 0;
  for (int e : eps) sum += e;
  if (sum != m) fail(ErrorKind::ShapeMismatch, "indices do not sum to m");
  if (!generic_step_condition(eps, ep)) fail(ErrorKind::ConditionViolated, "index lists admit no redistribution");
  const size_t d = eps.size();
  const size_t j = *generic_split(eps, ep);
  std::vector<size_t> p(d + 1), pp(d), q(d + 1), qp(d);
  for (size_t i = 0; i < d; ++i) {
    p[i + 1] = p[i] + eps[i] + 1;
    q[i + 1] = q[i] + eps[i];
  }
  for (size_t i = 0; i + 1 < d; ++i) {
    pp[i + 1] = pp[i] + ep[i] + 1;
    qp[i + 1] = qp[i] + ep[i];
  }
  const size_t n = m + d;
  Matrix ct(n, n - 1), bt(m, m);
  for (size_t i = 0; i < j; ++i) {
    add_identity(ct, p[i], pp[i], eps[i] + 1);
    add_identity(bt, q[i], qp[i], eps[i]);
  }
  for (size_t i = j; i + 1 < d; ++i) {
    add_identity(ct, p[i], pp[i], eps[i] + 1);
    add_identity(ct, p[i + 1], pp[i] + ep[i] - eps[i + 1], eps[i + 1] + 1);
    add_identity(bt, q[i], qp[i], eps[i]);
    add_identity(bt, q[i + 1], qp[i] + ep[i] - eps[i + 1], eps[i + 1]);
  }
  return {bt, ct.transpose()};
}

// ---- block construction ----

std::string BlockStep::to_string() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::BuildL: os << "BuildL(" << size << (from_l2 ? ", from L2" : "") << ")"; break;
    case Kind::BuildLT: os << "BuildLT(" << size << (from_l2 ? ", from L2" : "") << ")"; break;
    case Kind::LTfromM0: os << "LTfromM0(" << size << (from_l2 ? ", from L2" : "") << ")"; break;
    case Kind::NewEigenvalue: os << "NewEigenvalue(" << x.to_string() << ")"; break;
    case Kind::NewInfinite: os << "NewInfinite"; break;
    case Kind::EnlargeM: os << "EnlargeM(" << x.to_string() << ")"; break;
    case Kind::EnlargeN: os << "EnlargeN"; break;
    case Kind::SeedFromM0: os << "SeedFromM0(" << x.to_string() << ")"; break;
    case Kind::CompanionL2: os << "CompanionL2(" << x.to_string() << ", " << x2.to_string() << ")"; break;
    case Kind::MergeL2IntoSeed: os << "MergeL2IntoSeed"; break;
  }
  return os.str();
}

namespace {

using Kind = BlockStep::Kind;

Eigenvalue step_value(const BlockStep& s) {
  return (s.kind == Kind::NewInfinite || s.kind == Kind::EnlargeN) ? Eigenvalue::infinity() : s.x;
}

// Blocks tracked through the eliminations by their current row and column indices.
struct Work {
  enum class Role { FreeL1, L2, Seed, Built, Used } role;
  enum class Shape { L, LT, M, N } shape = Shape::L;
  int size = 0;
  Eigenvalue target;
  std::vector<size_t> rows, cols;
  int created = 0;  // order in which blocks were built
};

class Executor {
 public:
  Executor(const KroneckerStructure& src, MoebiusMap frame) : frame_(frame), inv_(frame.inverse()) {
    if (src.h || src.g || !src.nu.empty()) fail(ErrorKind::InsufficientBlocks, "source is not an L1/L2/M1(0) pool");
    int l2 = 0;
    for (int e : src.eps) {
      if (e == 2) ++l2;
      else if (e != 1) fail(ErrorKind::InsufficientBlocks, "source has a right index above 2");
    }
    if (l2 > 1) fail(ErrorKind::InsufficientBlocks, "source has more than one L2");
    if (!src.eigen.empty() &&
        (src.eigen.size() > 1 || src.eigen[0].x != Eigenvalue(Qi(0)) || src.eigen[0].sig != SizeSignature{1}))
      fail(ErrorKind::InsufficientBlocks, "source regular part must be M1(0)");
    cur_ = assemble_kcf(src);
    bacc_ = Matrix::identity(cur_.m());
    cacc_ = Matrix::identity(cur_.n());
    size_t r = 0, c = 0;
    for (int e : src.eps) {
      Work w{e == 1 ? Work::Role::FreeL1 : Work::Role::L2, Work::Shape::L, e, {}, {}, {}, 0};
      for (int t = 0; t < e; ++t) w.rows.push_back(r++);
      for (int t = 0; t <= e; ++t) w.cols.push_back(c++);
      works_.push_back(w);
    }
    if (!src.eigen.empty()) {
      Work w{Work::Role::Seed, Work::Shape::M, 1, Eigenvalue(Qi(0)), {r}, {c}, 0};
      works_.push_back(w);
    }
  }

  void run(const BlockStep& s) {
    switch (s.kind) {
      case Kind::BuildL: build_l(s.size, s.from_l2); break;
      case Kind::BuildLT: {
        size_t w = build_l(s.size + 1, s.from_l2);
        discard(works_[w].cols.back());
        discard(works_[w].cols.front());
        works_[w].shape = Work::Shape::LT;
        works_[w].size = s.size;
        break;
      }
      case Kind::LTfromM0: {
        size_t w = build_l(s.size, s.from_l2);
        size_t sd = take(Work::Role::Seed, "M1(0)");
        size_t sc = works_[sd].cols[0];
        works_[w].rows.push_back(works_[sd].rows[0]);
        works_[sd].cols.clear();
        add_and_remove(sc, {{works_[w].cols.back(), Qi(1)}});
        discard(works_[w].cols.front());
        works_[w].shape = Work::Shape::LT;
        break;
      }
      case Kind::NewEigenvalue:
      case Kind::NewInfinite: new_eigenvalue(step_value(s)); break;
      case Kind::EnlargeM:
      case Kind::EnlargeN: enlarge(step_value(s)); break;
      case Kind::SeedFromM0: {
        size_t sd = take(Work::Role::Seed, "M1(0)");
        if (inv_(s.x) != Eigenvalue(Qi(0))) fail(ErrorKind::ConditionViolated, "frame does not send 0 to the seed");
        works_[sd].role = Work::Role::Built;
        works_[sd].target = s.x;
        works_[sd].created = ++built_;
        seed_block_ = sd;
        break;
      }
      case Kind::CompanionL2: companion(s.x, s.x2); break;
      case Kind::MergeL2IntoSeed: {
        if (!seed_block_ || works_[*seed_block_].size != 1)
          fail(ErrorKind::ConditionViolated, "merge needs an unenlarged seed block");
        size_t l2 = take(Work::Role::L2, "L2");
        Work& sd = works_[*seed_block_];
        size_t sc = sd.cols[0];
        std::vector<size_t> rows = works_[l2].rows;
        rows.push_back(sd.rows[0]);
        sd.rows = rows;
        sd.cols = works_[l2].cols;
        sd.size = 3;
        works_[l2].rows.clear();
        works_[l2].cols.clear();
        add_and_remove(sc, {{sd.cols.back(), Qi(1)}});
        break;
      }
    }
  }

  BlockResult finish() {
    for (const Work& w : works_)
      if (w.role == Work::Role::FreeL1 || w.role == Work::Role::L2 || w.role == Work::Role::Seed)
        fail(ErrorKind::ConditionViolated, "script leaves source blocks unused");
    KcfReduction red = kcf_reduce(apply_alice(cur_, frame_));
    return {{frame_.matrix(), red.B * bacc_, red.C * cacc_}, red.structure, frame_};
  }

 private:
  size_t take(Work::Role role, const char* what) {
    for (size_t i = 0; i < works_.size(); ++i)
      if (works_[i].role == role) {
        works_[i].role = Work::Role::Used;
        return i;
      }
    fail(ErrorKind::InsufficientBlocks, std::string("no ") + what + " left in the pool");
  }

  // Column `col` is added to the listed columns and removed.
  void add_and_remove(size_t col, const std::vector<std::pair<size_t, Qi>>& adds) {
    EliminationSpec spec{EliminationSide::Column, col, std::vector<Qi>(cur_.n())};
    for (const auto& [k, a] : adds) spec.coeffs[k] += a;
    cacc_ = elimination_matrix(spec, cur_.n()) * cacc_;
    cur_ = eliminate(cur_, spec);
    for (Work& w : works_) {
      w.cols.erase(std::remove(w.cols.begin(), w.cols.end(), col), w.cols.end());
      for (size_t& c : w.cols)
        if (c > col) --c;
    }
  }
  void discard(size_t col) { add_and_remove(col, {}); }

  size_t build_l(int eps, bool from_l2) {
    if (eps < 1 || (from_l2 && eps < 2)) fail(ErrorKind::ConditionViolated, "invalid L size");
    size_t w = from_l2 ? take(Work::Role::L2, "L2") : take(Work::Role::FreeL1, "L1");
    works_[w].role = Work::Role::Built;
    works_[w].created = ++built_;
    works_[w].shape = Work::Shape::L;
    while (works_[w].size < eps) {
      size_t u = take(Work::Role::FreeL1, "L1");
      size_t first = works_[u].cols[0];
      works_[w].rows.push_back(works_[u].rows[0]);
      works_[w].cols.push_back(works_[u].cols[1]);
      works_[u].cols.clear();
      add_and_remove(first, {{works_[w].cols[works_[w].cols.size() - 2], Qi(1)}});
      ++works_[w].size;
    }
    return w;
  }

  void new_eigenvalue(const Eigenvalue& x) {
    size_t u = take(Work::Role::FreeL1, "L1");
    Eigenvalue y = inv_(x);
    Work& w = works_[u];
    w.role = Work::Role::Built;
    w.created = ++built_;
    w.target = x;
    w.size = 1;
    size_t a = w.cols[0], b = w.cols[1];
    if (y.is_infinite()) {
      w.shape = Work::Shape::N;
      discard(a);
    } else {
      w.shape = Work::Shape::M;
      add_and_remove(b, {{a, y.value()}});
    }
  }

  void enlarge(const Eigenvalue& x) {
    std::optional<size_t> blk;
    for (size_t i = 0; i < works_.size(); ++i)
      if (works_[i].role == Work::Role::Built && (works_[i].shape == Work::Shape::M || works_[i].shape == Work::Shape::N) &&
          works_[i].target == x && (!blk || works_[i].created > works_[*blk].created))
        blk = i;
    if (!blk) fail(ErrorKind::ConditionViolated, "no block with eigenvalue " + x.to_string() + " to enlarge");
    size_t u = take(Work::Role::FreeL1, "L1");
    Eigenvalue y = inv_(x);
    size_t a = works_[u].cols[0], b = works_[u].cols[1];
    size_t first = works_[*blk].cols[0];
    works_[*blk].rows.insert(works_[*blk].rows.begin(), works_[u].rows[0]);
    works_[u].cols.clear();
    if (y.is_infinite()) {
      works_[*blk].cols.insert(works_[*blk].cols.begin(), b);
      add_and_remove(a, {{first, Qi(1)}});
    } else {
      works_[*blk].cols.insert(works_[*blk].cols.begin(), a);
      add_and_remove(b, {{first, Qi(1)}, {a, y.value()}});
    }
    ++works_[*blk].size;
  }

  void companion(const Eigenvalue& x1, const Eigenvalue& x2) {
    size_t l2 = take(Work::Role::L2, "L2");
    Eigenvalue y1 = inv_(x1), y2 = inv_(x2);
    if (y1.is_infinite() || y2.is_infinite()) fail(ErrorKind::ConditionViolated, "companion needs finite preimages");
    std::vector<Qi> a = companion_coeffs({y1.value(), y2.value()});
    std::vector<size_t> rows = works_[l2].rows, cols = works_[l2].cols;
    works_[l2].rows.clear();
    works_[l2].cols.clear();
    add_and_remove(cols[2], {{cols[0], -a[0]}, {cols[1], -a[1]}});
    cols.pop_back();
    // bring the 2 x 2 block to Kronecker form so that later enlargements see canonical blocks
    KcfReduction red = kcf_reduce(cur_.rows_cols(rows, cols));
    Matrix b = Matrix::identity(cur_.m()), c = Matrix::identity(cur_.n());
    for (size_t i = 0; i < 2; ++i)
      for (size_t k = 0; k < 2; ++k) {
        b(rows[i], rows[k]) = red.B(i, k);
        c(cols[i], cols[k]) = red.C(i, k);
      }
    cur_ = apply_bc(cur_, b, c);
    bacc_ = b * bacc_;
    cacc_ = c * cacc_;
    auto back = [&](const Eigenvalue& y) { return frame_(y); };
    if (y1 == y2) {
      works_.push_back({Work::Role::Built, Work::Shape::M, 2, x1, rows, cols, ++built_});
    } else {
      // canonical order lists the smaller preimage first
      Eigenvalue lo = std::min(y1, y2), hi = std::max(y1, y2);
      works_.push_back({Work::Role::Built, Work::Shape::M, 1, back(lo), {rows[0]}, {cols[0]}, ++built_});
      works_.push_back({Work::Role::Built, Work::Shape::M, 1, back(hi), {rows[1]}, {cols[1]}, ++built_});
    }
  }

  MoebiusMap frame_, inv_;
  Pencil cur_;
  Matrix bacc_, cacc_;
  std::vector<Work> works_;
  std::optional<size_t> seed_block_;
  int built_ = 0;
};

// Alice's map for a script: sends 0 to the seed eigenvalue and keeps every needed preimage finite
// where a companion step or an infinite seed requires it.
MoebiusMap script_frame(const std::vector<BlockStep>& script) {
  std::optional<Eigenvalue> seed;
  bool needs_finite = false;
  std::vector<Eigenvalue> used;
  for (const BlockStep& s : script) {
    switch (s.kind) {
      case Kind::SeedFromM0: seed = s.x; used.push_back(s.x); break;
      case Kind::CompanionL2:
        used.push_back(s.x);
        used.push_back(s.x2);
        if (s.x.is_infinite() || s.x2.is_infinite()) needs_finite = true;
        break;
      case Kind::NewEigenvalue: case Kind::NewInfinite: case Kind::EnlargeM: case Kind::EnlargeN:
        used.push_back(step_value(s));
        break;
      default: break;
    }
  }
  if (seed && seed->is_infinite()) needs_finite = true;
  if (!needs_finite) {
    if (!seed || *seed == Eigenvalue(Qi(0))) return MoebiusMap::identity();
    return MoebiusMap{Qi(1), seed->value(), Qi(0), Qi(1)};
  }
  auto fresh = [&]() {
    long z = 1;
    while (std::find(used.begin(), used.end(), Eigenvalue(Qi(z))) != used.end()) ++z;
    used.push_back(Eigenvalue(Qi(z)));
    return Eigenvalue(Qi(z));
  };
  Eigenvalue at0 = seed ? *seed : fresh();
  if (!seed) used.push_back(at0);
  Eigenvalue at1 = fresh();
  Eigenvalue atinf = fresh();
  return MoebiusMap::through({Eigenvalue(Qi(0)), Eigenvalue(Qi(1)), Eigenvalue::infinity()}, {at0, at1, atinf});
}

}  // namespace

BlockResult consume_blocks(const std::vector<BlockStep>& script, const KroneckerStructure& src) {
  Executor ex(src, script_frame(script));
  for (const BlockStep& s : script) ex.run(s);
  return ex.finish();
}

// ---- planner ----

namespace {

struct Task {
  enum class Type { L, LT, J } type;
  int size;
  Eigenvalue x;
  bool done = false;
};

struct Pool {
  int l1 = 0;
  bool l2 = false, seed = false;
};

void enlarge_steps(std::vector<BlockStep>& out, const Eigenvalue& x, int count) {
  for (int t = 0; t < count; ++t) {
    BlockStep s;
    s.kind = x.is_infinite() ? Kind::EnlargeN : Kind::EnlargeM;
    s.x = x;
    out.push_back(s);
  }
}

bool plan(std::vector<Task>& tasks, Pool pool, std::vector<BlockStep>& out) {
  auto it = std::find_if(tasks.begin(), tasks.end(), [](const Task& t) { return !t.done; });
  if (it == tasks.end()) return pool.l1 == 0 && !pool.l2 && !pool.seed;
  Task& t = *it;
  t.done = true;
  const size_t mark = out.size();
  auto attempt = [&](Pool next, const std::vector<BlockStep>& steps) {
    if (next.l1 < 0) return false;
    out.insert(out.end(), steps.begin(), steps.end());
    if (plan(tasks, next, out)) return true;
    out.resize(mark);
    return false;
  };
  auto step = [](Kind k, int size = 0, bool from_l2 = false, Eigenvalue x = {}, Eigenvalue x2 = {}) {
    BlockStep s;
    s.kind = k;
    s.size = size;
    s.from_l2 = from_l2;
    s.x = x;
    s.x2 = x2;
    return s;
  };
  bool ok = false;
  if (t.type == Task::Type::L) {
    ok = attempt({pool.l1 - t.size, pool.l2, pool.seed}, {step(Kind::BuildL, t.size)}) ||
         (pool.l2 && t.size >= 2 && attempt({pool.l1 - (t.size - 2), false, pool.seed}, {step(Kind::BuildL, t.size, true)}));
  } else if (t.type == Task::Type::LT) {
    ok = attempt({pool.l1 - t.size - 1, pool.l2, pool.seed}, {step(Kind::BuildLT, t.size)}) ||
         (pool.l2 && attempt({pool.l1 - (t.size - 1), false, pool.seed}, {step(Kind::BuildLT, t.size, true)})) ||
         (pool.seed && attempt({pool.l1 - t.size, pool.l2, false}, {step(Kind::LTfromM0, t.size)})) ||
         (pool.seed && pool.l2 && t.size >= 2 &&
          attempt({pool.l1 - (t.size - 2), false, false}, {step(Kind::LTfromM0, t.size, true)}));
  } else {
    const Eigenvalue& x = t.x;
    const int e = t.size;
    std::vector<BlockStep> s;
    // seed first: it keeps Alice's map a plain translation
    if (!ok && pool.seed) {
      s = {step(Kind::SeedFromM0, 0, false, x)};
      enlarge_steps(s, x, e - 1);
      ok = attempt({pool.l1 - (e - 1), pool.l2, false}, s);
    }
    if (!ok && pool.seed && pool.l2 && e >= 3) {
      s = {step(Kind::SeedFromM0, 0, false, x), step(Kind::MergeL2IntoSeed)};
      enlarge_steps(s, x, e - 3);
      ok = attempt({pool.l1 - (e - 3), false, false}, s);
    }
    if (!ok && pool.l2 && e >= 2) {
      s = {step(Kind::CompanionL2, 0, false, x, x)};
      enlarge_steps(s, x, e - 2);
      ok = attempt({pool.l1 - (e - 2), false, pool.seed}, s);
    }
    if (!ok && pool.l2) {
      for (auto jt = it + 1; jt != tasks.end() && !ok; ++jt) {
        if (jt->done || jt->type != Task::Type::J || jt->x == x) continue;
        jt->done = true;
        s = {step(Kind::CompanionL2, 0, false, x, jt->x)};
        enlarge_steps(s, x, e - 1);
        enlarge_steps(s, jt->x, jt->size - 1);
        ok = attempt({pool.l1 - (e - 1) - (jt->size - 1), false, pool.seed}, s);
        if (!ok) jt->done = false;
      }
    }
    if (!ok) {
      s = {x.is_infinite() ? step(Kind::NewInfinite) : step(Kind::NewEigenvalue, 0, false, x)};
      enlarge_steps(s, x, e - 1);
      ok = attempt({pool.l1 - e, pool.l2, pool.seed}, s);
    }
  }
  if (!ok) t.done = false;
  return ok;
}

}  // namespace

std::vector<BlockStep> plan_blocks(const KroneckerStructure& src, const KroneckerStructure& target) {
  if (src.m() != target.m()) fail(ErrorKind::ShapeMismatch, "block consumption keeps the number of rows");
  if (target.h || target.g) fail(ErrorKind::InsufficientBlocks, "target has zero minimal indices");
  Pool pool;
  for (int e : src.eps) {
    if (e == 1) ++pool.l1;
    else if (e == 2 && !pool.l2) pool.l2 = true;
    else fail(ErrorKind::InsufficientBlocks, "source is not an L1/L2/M1(0) pool");
  }
  if (src.h || src.g || !src.nu.empty()) fail(ErrorKind::InsufficientBlocks, "source is not an L1/L2/M1(0) pool");
  if (!src.eigen.empty()) {
    if (src.eigen.size() != 1 || src.eigen[0].x != Eigenvalue(Qi(0)) || src.eigen[0].sig != SizeSignature{1})
      fail(ErrorKind::InsufficientBlocks, "source regular part must be M1(0)");
    pool.seed = true;
  }
  std::vector<Task> tasks;
  // most constrained first: big eigenvalue blocks, then transposed blocks, then L blocks
  for (const EigenEntry& en : target.eigen)
    for (int e : en.sig) tasks.push_back({Task::Type::J, e, en.x});
  std::stable_sort(tasks.begin(), tasks.end(), [](const Task& a, const Task& b) { return a.size > b.size; });
  for (int nu : target.nu) tasks.push_back({Task::Type::LT, nu, {}});
  for (int eps : target.eps) tasks.push_back({Task::Type::L, eps, {}});
  std::vector<BlockStep> out;
  if (!plan(tasks, pool, out))
    fail(ErrorKind::InsufficientBlocks, "the pool cannot supply " + target.to_string());
  return out;
}

// ---- seeded search ----

namespace {

const std::vector<Qi>& coefficient_pool() {
  static const std::vector<Qi> pool{Qi(-2), Qi(-1), Qi(0), Qi(1), Qi(2), Qi::i(), -Qi::i()};
  return pool;
}

EliminationSpec decode(std::uint64_t code, size_t n) {
  const size_t base = coefficient_pool().size();
  EliminationSpec spec{EliminationSide::Column, static_cast<size_t>(code % n), std::vector<Qi>(n)};
  code /= n;
  for (size_t k = 0; k < n; ++k) {
    if (k == spec.index) continue;
    spec.coeffs[k] = coefficient_pool()[code % base];
    code /= base;
  }
  return spec;
}

}  // namespace

EliminationSearch::EliminationSearch(Pencil src, std::uint64_t seed, std::size_t budget) : src_(std::move(src)) {
  const size_t n = src_.n();
  if (n < 2) fail(ErrorKind::ShapeMismatch, "nothing to eliminate");
  std::uint64_t total = n;
  for (size_t k = 0; k + 1 < n; ++k) total *= coefficient_pool().size();
  std::vector<std::uint64_t> order;
  std::mt19937_64 rng(seed);
  if (total <= budget) {
    order.resize(total);
    for (std::uint64_t c = 0; c < total; ++c) order[c] = c;
    std::shuffle(order.begin(), order.end(), rng);
    exhaustive_ = true;
  } else {
    std::set<std::uint64_t> seen;
    while (order.size() < budget) {
      std::uint64_t c = rng() % total;
      if (seen.insert(c).second) order.push_back(c);
    }
  }
  for (std::uint64_t code : order) {
    EliminationSpec spec = decode(code, n);
    ++tried_;
    KroneckerStructure ks;
    try {
      ks = kronecker_structure(eliminate(src_, spec));
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::NonSplitting) continue;
      throw;
    }
    bool known = std::any_of(reached_.begin(), reached_.end(), [&](const auto& r) { return r.first == ks; });
    if (!known) reached_.emplace_back(ks, spec);
  }
}

std::optional<TransformWitness> EliminationSearch::find(const KroneckerStructure& target) const {
  for (const auto& [ks, spec] : reached_) {
    std::optional<MoebiusMap> f = structures_slocc_related(ks, target);
    if (!f) continue;
    Pencil moved = apply_alice(eliminate(src_, spec), *f);
    Matrix B, C;
    if (!find_equivalence(moved, assemble_kcf(target), B, C)) continue;
    return TransformWitness{f->matrix(), B, C * elimination_matrix(spec, src_.n())};
  }
  return std::nullopt;
}

}  // namespace kron
