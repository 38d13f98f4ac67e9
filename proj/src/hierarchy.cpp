#include "kron/hierarchy.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "kron/errors.hpp"
#include "kron/slocc.hpp"

namespace kron {

// ---- skeletons ----

const std::vector<std::pair<Eigenvalue, std::string>>& skeleton_slot_pool() {
  static const std::vector<std::pair<Eigenvalue, std::string>> pool{
      {Eigenvalue(Qi(0)), "0"},  {Eigenvalue(Qi(1)), "1"},  {Eigenvalue::infinity(), "inf"},
      {Eigenvalue(Qi(2)), "p1"}, {Eigenvalue(Qi(5)), "p2"}, {Eigenvalue(Qi(-1)), "p3"},
      {Eigenvalue(Qi(1, 1)), "p4"},
  };
  return pool;
}

namespace {

bool slot_key_less(const EigenEntry& a, const EigenEntry& b) {
  if (a.weight() != b.weight()) return a.weight() > b.weight();
  return a.sig > b.sig;
}

std::string block_name(int size, const Eigenvalue& x, const std::string& slot) {
  return x.is_infinite() ? "N" + std::to_string(size) : "M" + std::to_string(size) + "(" + slot + ")";
}

}  // namespace

bool StructureSkeleton::has_parameters() const {
  return std::any_of(slots.begin(), slots.end(), [](const auto& s) { return s.second[0] == 'p'; });
}

std::string StructureSkeleton::name() const {
  std::vector<std::string> parts;
  const KroneckerStructure& ks = structure;
  if (ks.h || ks.g) parts.push_back("0(" + std::to_string(ks.h) + "x" + std::to_string(ks.g) + ")");
  for (int e : ks.eps) parts.push_back("L" + std::to_string(e));
  for (int v : ks.nu) parts.push_back("LT" + std::to_string(v));
  for (const auto& [x, slot] : slots) {
    auto it = std::find_if(ks.eigen.begin(), ks.eigen.end(), [&](const EigenEntry& e) { return e.x == x; });
    for (int s : it->sig) parts.push_back(block_name(s, x, slot));
  }
  std::string out;
  for (size_t k = 0; k < parts.size(); ++k) out += (k ? "+" : "") + parts[k];
  return out.empty() ? "empty" : out;
}

std::string StructureSkeleton::id() const { return std::to_string(m()) + "x" + std::to_string(n()) + " " + name(); }

StructureSkeleton make_skeleton(const KroneckerStructure& ks) {
  const auto& pool = skeleton_slot_pool();
  if (ks.eigen.size() > pool.size())
    fail(ErrorKind::ScopeViolation, "more distinct eigenvalues than skeleton slots");
  std::vector<EigenEntry> order = ks.eigen;
  std::stable_sort(order.begin(), order.end(), slot_key_less);
  StructureSkeleton sk;
  sk.structure = ks;
  sk.structure.eigen.clear();
  for (size_t k = 0; k < order.size(); ++k) {
    sk.structure.eigen.push_back({pool[k].first, order[k].sig});
    sk.slots.push_back(pool[k]);
  }
  sk.structure.canonicalize();
  return sk;
}

namespace {

// Ascending lists of `count` parts >= 1 with the given sum.
void lists_with_sum(int sum, int count, int lo, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (count == 0) {
    if (sum == 0) out.push_back(cur);
    return;
  }
  for (int v = lo; v * count <= sum; ++v) {
    cur.push_back(v);
    lists_with_sum(sum - v, count - 1, v, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<int>> lists_with_sum(int sum, int count) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  lists_with_sum(sum, count, 1, cur, out);
  return out;
}

// Size signatures (descending partitions) ordered by weight, then lexicographically.
std::vector<SizeSignature> signatures_up_to(int q) {
  std::vector<SizeSignature> out;
  for (int w = 1; w <= q; ++w) {
    std::vector<SizeSignature> level;
    for (int parts = 1; parts <= w; ++parts)
      for (auto l : lists_with_sum(w, parts)) {
        std::reverse(l.begin(), l.end());
        level.push_back(l);
      }
    std::sort(level.begin(), level.end());
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

// Multisets of signatures with total weight q, as non-decreasing index sequences.
void signature_multisets(const std::vector<SizeSignature>& sigs, int q, size_t lo, std::vector<SizeSignature>& cur,
                         std::vector<std::vector<SizeSignature>>& out) {
  if (q == 0) {
    out.push_back(cur);
    return;
  }
  for (size_t k = lo; k < sigs.size(); ++k) {
    int w = 0;
    for (int s : sigs[k]) w += s;
    if (w > q) continue;
    cur.push_back(sigs[k]);
    signature_multisets(sigs, q - w, k, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<StructureSkeleton> enumerate_skeletons(int m, int n) {
  if (m < 1 || n < m || n > 2 * m) fail(ErrorKind::ShapeMismatch, "skeletons need 1 <= m <= n <= 2m");
  const int d = n - m;
  const std::vector<SizeSignature> sigs = signatures_up_to(m);
  std::vector<StructureSkeleton> out;
  for (int k = 0; (k + d) + 2 * k <= m; ++k) {
    const int ecount = k + d;
    for (int se = ecount; se + 2 * k <= m; ++se) {
      for (const auto& eps : lists_with_sum(se, ecount)) {
        for (int sn = k; se + sn + k <= m; ++sn) {
          for (const auto& nu : lists_with_sum(sn, k)) {
            const int q = m - se - sn - k;
            std::vector<std::vector<SizeSignature>> multisets;
            std::vector<SizeSignature> cur;
            signature_multisets(sigs, q, 0, cur, multisets);
            for (const auto& ms : multisets) {
              // a single eigenvalue with only 1 x 1 blocks and nothing else leaves Alice unentangled
              if (eps.empty() && nu.empty() && ms.size() == 1 &&
                  std::all_of(ms[0].begin(), ms[0].end(), [](int s) { return s == 1; }))
                continue;
              KroneckerStructure ks;
              ks.eps = eps;
              ks.nu = nu;
              for (const auto& sig : ms) ks.eigen.push_back({Eigenvalue(Qi(0)), sig});
              out.push_back(make_skeleton(ks));
            }
          }
        }
      }
    }
  }
  return out;
}

// ---- obstructions ----

namespace {

struct Divisors {
  BinaryForm dm, d2;
};

Divisors target_divisors(const KroneckerStructure& dst) {
  std::vector<BinaryForm> inv = invariant_polynomials(assemble_kcf(dst));
  const size_t m = static_cast<size_t>(dst.m());
  return {determinantal_divisor(inv, m), determinantal_divisor(inv, std::min<size_t>(2, m))};
}

size_t distinct_roots(const BinaryForm& f) {
  FormFactorization fac = factor_form(f);
  return fac.roots.size() + (fac.mu_power > 0 ? 1 : 0);
}

bool squarefree(const BinaryForm& f) {
  FormFactorization fac = factor_form(f);
  if (fac.mu_power > 1) return false;
  return std::all_of(fac.roots.begin(), fac.roots.end(), [](const auto& r) { return r.second == 1; });
}

std::string dm_name(const KroneckerStructure& dst) { return "D_" + std::to_string(dst.m()); }

}  // namespace

std::vector<Obstruction> obstructions(const KroneckerStructure& src, const KroneckerStructure& dst) {
  if (src.m() != dst.m() || dst.n() >= src.n())
    fail(ErrorKind::ScopeViolation, "obstructions apply to column removal at fixed m only");
  Divisors dv = target_divisors(dst);
  std::vector<Obstruction> out;
  const bool full_rank = !dv.dm.is_zero();
  const std::string dm = dm_name(dst) + " = " + dv.dm.to_string();
  if (!full_rank) return out;

  if (src.h > 0 || !src.nu.empty())
    out.push_back({"LT-rank",
                   "source has a left null vector, so every reachable pencil has " + dm_name(dst) + " = 0; target " + dm,
                   dv.dm, dv.d2});
  if (src.eigen.size() >= 2 && distinct_roots(dv.dm) < 2)
    out.push_back({"two-eigenvalue",
                   "source eigenvalues " + src.eigen[0].x.to_string() + ", " + src.eigen[1].x.to_string() +
                       " force two distinct linear factors in a non-zero " + dm_name(dst) + "; target " + dm,
                   dv.dm, dv.d2});
  for (const EigenEntry& e : src.eigen) {
    if (e.weight() >= 2 && squarefree(dv.dm)) {
      out.push_back({"multiplicity",
                     "source eigenvalue " + e.x.to_string() + " has algebraic multiplicity " +
                         std::to_string(e.weight()) + ", forcing a square factor in a non-zero " + dm_name(dst) +
                         "; target " + dm + " is squarefree",
                     dv.dm, dv.d2});
      break;
    }
  }
  const bool long_l = std::any_of(src.eps.begin(), src.eps.end(), [](int e) { return e >= 3; });
  const bool two_l2 = std::count(src.eps.begin(), src.eps.end(), 2) >= 2;
  if ((long_l || two_l2) && dv.d2.degree() > 0)
    out.push_back({"L-degree",
                   std::string("source has ") + (long_l ? "a right index >= 3" : "L2+L2") +
                       ", so every reachable pencil has " + dm_name(dst) + " = 0 or D_2 = 1; target " + dm +
                       ", D_2 = " + dv.d2.to_string(),
                   dv.dm, dv.d2});
  if (!src.eigen.empty() && dv.dm.degree() == 0)
    out.push_back({"single-eigenvalue",
                   "source eigenvalue " + src.eigen[0].x.to_string() + " forces a linear factor in a non-zero " +
                       dm_name(dst) + "; target " + dm,
                   dv.dm, dv.d2});
  return out;
}

std::optional<Obstruction> obstruction_check(const KroneckerStructure& src, const KroneckerStructure& dst) {
  std::vector<Obstruction> all = obstructions(src, dst);
  if (all.empty()) return std::nullopt;
  return all.front();
}

std::optional<Obstruction> obstruction_check(const StructureSkeleton& src, const StructureSkeleton& dst) {
  return obstruction_check(src.structure, dst.structure);
}

// ---- reach ----

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    case Verdict::Unknown: return "unknown";
  }
  return "unknown";
}

namespace {

bool only_right_indices(const KroneckerStructure& ks) {
  return ks.h == 0 && ks.g == 0 && ks.nu.empty() && ks.eigen.empty() && !ks.eps.empty();
}

bool only_eigenvalues(const KroneckerStructure& ks) {
  return ks.h == 0 && ks.g == 0 && ks.nu.empty() && ks.eps.empty() && !ks.eigen.empty();
}

std::vector<Eigenvalue> eigenvalue_list(const KroneckerStructure& ks) {
  std::vector<Eigenvalue> xs;
  for (const EigenEntry& e : ks.eigen)
    for (int t = 0; t < e.weight(); ++t) xs.push_back(e.x);
  return xs;
}

KroneckerStructure transposed(const KroneckerStructure& ks) {
  KroneckerStructure t = ks;
  std::swap(t.h, t.g);
  std::swap(t.eps, t.nu);
  return t;
}

KroneckerStructure l_pool(int l1, bool l2, bool seed) {
  KroneckerStructure ks;
  ks.eps.assign(l1, 1);
  if (l2) ks.eps.push_back(2);
  if (seed) ks.eigen.push_back({Eigenvalue(Qi(0)), {1}});
  ks.canonicalize();
  return ks;
}

// Constructive families; a witness from the source representative to the target representative.
std::optional<std::pair<std::string, TransformWitness>> build(const KroneckerStructure& src,
                                                              const KroneckerStructure& dst) {
  const int m = src.m();
  if (dst.m() == m && dst.n() == m && only_right_indices(src) && src.eps == std::vector<int>{m} &&
      only_eigenvalues(dst) && std::all_of(dst.eigen.begin(), dst.eigen.end(), [](const EigenEntry& e) { return e.sig.size() == 1; })) {
    std::vector<Eigenvalue> xs = eigenvalue_list(dst);
    if (static_cast<int>(dst.eigen.size()) == m) return {{"lm_to_distinct", lm_to_distinct(m, xs)}};
    return {{"lm_to_companion", lm_to_companion(m, xs)}};
  }
  if (dst.m() + 1 == m && dst.n() == src.n() && only_eigenvalues(src) && dst.eps == std::vector<int>{dst.m()} &&
      only_right_indices(dst) &&
      std::all_of(src.eigen.begin(), src.eigen.end(), [](const EigenEntry& e) { return e.sig == SizeSignature{1}; }))
    return {{"distinct_to_lm", distinct_to_lm(eigenvalue_list(src))}};
  if (dst.m() == m && dst.n() + 1 == src.n() && only_right_indices(src) && only_right_indices(dst) &&
      generic_step_condition(src.eps, dst.eps)) {
    GenericStep st = generic_step(m, src.eps, dst.eps);
    return {{"generic_step", TransformWitness{Matrix::identity(2), inverse(st.Btilde), st.C}}};
  }
  if (dst.m() == m && dst.n() < src.n()) {
    try {
      std::vector<BlockStep> script = plan_blocks(src, dst);
      BlockResult r = consume_blocks(script, src);
      if (r.structure == dst) return {{"consume_blocks", r.witness}};
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::InsufficientBlocks) throw;
    }
  }
  return std::nullopt;
}

std::string unknown_note(const KroneckerStructure& src, const KroneckerStructure& dst) {
  const int m = src.m();
  if (src == l_pool(0, true, true) && dst.h == 0 && dst.g == 0 && dst.eps == std::vector<int>{1} &&
      dst.nu == std::vector<int>{1} && dst.eigen.empty())
    return "known exception: L2+M1(0) reaches every 3x3 pencil except L1+LT1; this negative is not certified here";
  if (m >= 2 && src == l_pool(m - 2, true, false) && src.n() == 2 * m - 1)
    return "known non-resource: (m-2)L1+L2 does not reach L1+(m-1)M1(0); this negative is not certified here";
  return "";
}

}  // namespace

const EliminationSearch& ReachEngine::search_for(const Pencil& src) {
  std::string key = src.to_string();
  auto it = cache_.find(key);
  if (it == cache_.end())
    it = cache_.emplace(key, std::make_unique<EliminationSearch>(src, opts_.seed, opts_.budget)).first;
  return *it->second;
}

ReachVerdict ReachEngine::reach(const KroneckerStructure& src, const KroneckerStructure& dst) {
  if (dst.m() > src.m() || dst.n() > src.n())
    fail(ErrorKind::ShapeMismatch, "reach only lowers dimensions");
  const Pencil ps = assemble_kcf(src), pd = assemble_kcf(dst);
  auto checked = [&](std::string method, TransformWitness w) {
    if (!verify_pencil_witness(ps, w, pd))
      throw std::logic_error("witness from " + method + " does not verify for " + src.to_string() + " -> " + dst.to_string());
    ReachVerdict v;
    v.verdict = Verdict::Yes;
    v.method = std::move(method);
    v.witness = std::move(w);
    return v;
  };

  if (dst.m() == src.m() && dst.n() == src.n()) {
    std::optional<MoebiusMap> f = structures_slocc_related(src, dst);
    if (!f) {
      ReachVerdict v;
      v.verdict = Verdict::No;
      v.method = "invariants";
      v.annotation = "same dimensions and inequivalent Kronecker data";
      return v;
    }
    Matrix B, C;
    find_equivalence(apply_alice(ps, *f), pd, B, C);
    return checked("equivalence", {f->matrix(), B, C});
  }

  if (auto b = build(src, dst)) return checked(b->first, b->second);

  if (dst.m() == src.m()) {
    if (auto ob = obstruction_check(src, dst)) {
      ReachVerdict v;
      v.verdict = Verdict::No;
      v.method = "obstruction";
      v.obstruction = ob;
      return v;
    }
  }

  ReachVerdict unknown;
  unknown.annotation = unknown_note(src, dst);
  if (dst.m() == src.m() && dst.n() + 1 == src.n()) {
    const EliminationSearch& s = search_for(ps);
    if (auto w = s.find(dst)) return checked("search", *w);
    if (unknown.annotation.empty())
      unknown.annotation = "no witness among " + std::to_string(s.tried()) + (s.exhaustive() ? " (all)" : " sampled") +
                           " column eliminations";
  } else if (dst.n() == src.n() && dst.m() + 1 == src.m()) {
    const EliminationSearch& s = search_for(ps.transpose());
    if (auto w = s.find(transposed(dst))) {
      // bring the transposed result onto the target representative
      Pencil reached = apply_bc(apply_alice(ps, MoebiusMap::from_matrix(w->A)), w->C, w->B);
      Matrix B, C;
      if (find_equivalence(reached, pd, B, C)) return checked("search", {w->A, B * w->C, C * w->B});
    }
    if (unknown.annotation.empty())
      unknown.annotation = "no witness among " + std::to_string(s.tried()) + (s.exhaustive() ? " (all)" : " sampled") +
                           " row eliminations";
  } else if (unknown.annotation.empty()) {
    unknown.annotation = "no builder or obstruction applies; search covers single-line steps only";
  }
  return unknown;
}

ReachVerdict ReachEngine::reach_path(const std::vector<KroneckerStructure>& path) {
  if (path.size() < 2) fail(ErrorKind::ShapeMismatch, "a path needs two structures");
  ReachVerdict total;
  total.verdict = Verdict::Yes;
  total.method = "path";
  std::optional<TransformWitness> acc;
  bool saw_no = false;
  for (size_t k = 0; k + 1 < path.size(); ++k) {
    ReachVerdict v = reach(path[k], path[k + 1]);
    if (v.verdict == Verdict::Unknown) {
      total.verdict = Verdict::Unknown;
      total.witness.reset();
      total.annotation = "step " + std::to_string(k) + " unknown: " + v.annotation;
      return total;
    }
    if (v.verdict == Verdict::No) {
      if (!saw_no) {
        total.obstruction = v.obstruction;
        total.annotation = "step " + std::to_string(k) + " refuted";
      }
      saw_no = true;
      continue;
    }
    acc = acc ? compose(*acc, *v.witness) : *v.witness;
  }
  if (saw_no) {
    total.verdict = Verdict::No;
    return total;
  }
  total.witness = acc;
  return total;
}

ReachVerdict reach(const StructureSkeleton& src, const StructureSkeleton& dst, ReachOptions opts) {
  ReachEngine engine(opts);
  return engine.reach(src, dst);
}

// ---- resource report ----

std::string ResourceReport::to_text() const {
  std::ostringstream os;
  os << "resource report m = " << m << "\n";
  for (const ReportItem& it : items) {
    os << "- " << it.title << ": " << it.passed << "/" << it.total << "\n";
    for (const std::string& f : it.failures) os << "    not met: " << f << "\n";
    for (const std::string& n : it.notes) os << "    " << n << "\n";
  }
  return os.str();
}

namespace {

ReportItem reaches_all(ReachEngine& engine, const std::string& title, const KroneckerStructure& src,
                       const std::vector<StructureSkeleton>& targets) {
  ReportItem it;
  it.title = title;
  for (const StructureSkeleton& t : targets) {
    ++it.total;
    ReachVerdict v = engine.reach(src, t.structure);
    if (v.verdict == Verdict::Yes) {
      ++it.passed;
    } else {
      it.failures.push_back(t.id() + " (" + verdict_name(v.verdict) + (v.annotation.empty() ? "" : ": " + v.annotation) + ")");
    }
  }
  return it;
}

}  // namespace

ResourceReport resource_report(int m, ReachOptions opts) {
  if (m < 3 || m > 6) fail(ErrorKind::ShapeMismatch, "resource report covers 3 <= m <= 6");
  ResourceReport rep;
  rep.m = m;
  ReachEngine engine(opts);
  const std::vector<StructureSkeleton> square = enumerate_skeletons(m, m);
  const std::string mm = "(" + std::to_string(m) + "," + std::to_string(m) + ")";

  if (m >= 4) {
    KroneckerStructure omega = l_pool(m - 3, true, true);
    rep.items.push_back(reaches_all(engine, omega.to_string() + " reaches every " + mm + " skeleton", omega, square));
  } else {
    KroneckerStructure small = l_pool(0, true, true);
    rep.items.push_back(reaches_all(engine, small.to_string() + " reaches every " + mm + " skeleton", small, square));
    KroneckerStructure wide = l_pool(2, false, true);
    rep.items.push_back(reaches_all(engine, wide.to_string() + " reaches every " + mm + " skeleton", wide, square));
  }

  if (m >= 4) {
    ReportItem it;
    it.title = "no (" + std::to_string(m) + "," + std::to_string(2 * m - 3) + ") skeleton reaches every " + mm + " skeleton";
    for (const StructureSkeleton& s : enumerate_skeletons(m, 2 * m - 3)) {
      ++it.total;
      bool found = false;
      for (const StructureSkeleton& t : square) {
        if (auto ob = obstruction_check(s, t)) {
          it.notes.push_back(s.id() + " fails on " + t.id() + " [" + ob->id + "]");
          found = true;
          break;
        }
      }
      if (found) ++it.passed;
      else it.failures.push_back(s.id());
    }
    rep.items.push_back(it);
  }

  {
    ReportItem it;
    const int n = 2 * m - 1;
    it.title = "(" + std::to_string(m) + "," + std::to_string(n) + ") skeletons with an eigenvalue miss every all-L target";
    std::vector<StructureSkeleton> all_l;
    for (int k = m + 1; k <= 2 * m - 2; ++k)
      for (const StructureSkeleton& t : enumerate_skeletons(m, k))
        if (only_right_indices(t.structure)) all_l.push_back(t);
    for (const StructureSkeleton& s : enumerate_skeletons(m, n)) {
      if (s.structure.eigen.empty()) {
        ReachVerdict v;
        v.annotation = unknown_note(s.structure, all_l.empty() ? s.structure : all_l.front().structure);
        it.notes.push_back(s.id() + ": unknown; " + v.annotation);
        continue;
      }
      ++it.total;
      bool all = !all_l.empty();
      for (const StructureSkeleton& t : all_l) {
        std::vector<Obstruction> obs = obstructions(s.structure, t.structure);
        all = all && std::any_of(obs.begin(), obs.end(), [](const Obstruction& o) { return o.id == "single-eigenvalue"; });
      }
      if (all) ++it.passed;
      else it.failures.push_back(s.id());
    }
    rep.items.push_back(it);
  }

  rep.items.push_back(reaches_all(engine, std::to_string(m) + "L1 reaches every " + mm + " skeleton", l_pool(m, false, false), square));
  return rep;
}

// ---- graph ----

HierarchyGraph build_hierarchy(int m, int n_max, ReachEngine& engine, bool generic_only) {
  if (n_max < m || n_max > 2 * m) fail(ErrorKind::ShapeMismatch, "hierarchy layers need m <= n <= 2m");
  HierarchyGraph g;
  for (int n = n_max; n >= m; --n) {
    HierarchyLayer layer{m, n, {}};
    if (generic_only) layer.skeletons.push_back(make_skeleton(generic_structure(m, n)));
    else layer.skeletons = enumerate_skeletons(m, n);
    g.layers.push_back(std::move(layer));
  }
  for (size_t l = 0; l + 1 < g.layers.size(); ++l)
    for (size_t a = 0; a < g.layers[l].skeletons.size(); ++a)
      for (size_t b = 0; b < g.layers[l + 1].skeletons.size(); ++b) {
        ReachVerdict v = engine.reach(g.layers[l].skeletons[a], g.layers[l + 1].skeletons[b]);
        std::string detail = v.verdict == Verdict::No && v.obstruction ? v.obstruction->id : v.method;
        g.edges.push_back({l, a, b, v.verdict, detail});
      }
  return g;
}

std::string emit_graph(const HierarchyGraph& g) {
  std::ostringstream os;
  auto quote = [](const std::string& s) { return "\"" + s + "\""; };
  os << "digraph hierarchy {\n  rankdir=TB;\n  node [shape=box];\n";
  for (size_t l = 0; l < g.layers.size(); ++l) {
    const HierarchyLayer& layer = g.layers[l];
    os << "  subgraph " << quote("layer " + std::to_string(layer.m) + "x" + std::to_string(layer.n)) << " {\n    rank=same;\n";
    for (const StructureSkeleton& s : layer.skeletons)
      os << "    " << quote(s.id()) << " [label=" << quote(s.name()) << "];\n";
    os << "  }\n";
  }
  std::vector<const HierarchyEdge*> refuted;
  for (const HierarchyEdge& e : g.edges) {
    const std::string from = g.layers[e.layer].skeletons[e.src].id(), to = g.layers[e.layer + 1].skeletons[e.dst].id();
    if (e.verdict == Verdict::No) {
      refuted.push_back(&e);
      continue;
    }
    os << "  " << quote(from) << " -> " << quote(to) << " [style=" << (e.verdict == Verdict::Yes ? "solid" : "dotted");
    if (!e.detail.empty()) os << ", label=" << quote(e.detail);
    os << "];\n";
  }
  if (!refuted.empty()) {
    os << "  // not reachable:\n";
    for (const HierarchyEdge* e : refuted)
      os << "  // " << g.layers[e->layer].skeletons[e->src].id() << " -/-> " << g.layers[e->layer + 1].skeletons[e->dst].id()
         << " [" << e->detail << "]\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace kron
