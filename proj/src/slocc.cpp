#include "kron/slocc.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "kron/errors.hpp"

namespace kron {

namespace {

// Orders eigenvalues by total weight desc, signature desc, value asc.
bool key_less(const EigenEntry& a, const EigenEntry& b) {
  if (a.weight() != b.weight()) return a.weight() > b.weight();
  if (a.sig != b.sig) return a.sig > b.sig;
  return a.x < b.x;
}

bool same_key(const EigenEntry& a, const EigenEntry& b) { return a.sig == b.sig; }

bool entry_list_less(const std::vector<EigenEntry>& a, const std::vector<EigenEntry>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      [](const EigenEntry& x, const EigenEntry& y) {
                                        if (x.x != y.x) return x.x < y.x;
                                        return x.sig < y.sig;
                                      });
}

Eigenvalue aux_point(const std::vector<Eigenvalue>& avoid, int skip) {
  for (long k = 2;; ++k) {
    Eigenvalue c{Qi(k)};
    if (std::find(avoid.begin(), avoid.end(), c) != avoid.end()) continue;
    if (skip-- == 0) return c;
  }
}

// Moebius map sending from[j] to to[j] for up to three distinct points.
MoebiusMap map_through_points(std::vector<Eigenvalue> from, std::vector<Eigenvalue> to) {
  std::vector<Eigenvalue> avoid_from = from, avoid_to = to;
  for (int s = 0; from.size() < 3; ++s) {
    from.push_back(aux_point(avoid_from, s));
    to.push_back(aux_point(avoid_to, s));
  }
  return MoebiusMap::through({from[0], from[1], from[2]}, {to[0], to[1], to[2]});
}

std::vector<SizeSignature> sorted_signatures(const std::vector<EigenEntry>& e) {
  std::vector<SizeSignature> out;
  for (const auto& x : e) out.push_back(x.sig);
  std::sort(out.begin(), out.end());
  return out;
}

// Ordered selections of distinct entries from `pool` whose signatures match `pattern`.
void for_each_selection(const std::vector<EigenEntry>& pool, const std::vector<SizeSignature>& pattern,
                        const std::function<bool(const std::vector<size_t>&)>& visit) {
  std::vector<size_t> chosen;
  std::vector<bool> used(pool.size(), false);
  std::function<bool()> rec = [&]() -> bool {
    if (chosen.size() == pattern.size()) return visit(chosen);
    for (size_t i = 0; i < pool.size(); ++i) {
      if (used[i] || pool[i].sig != pattern[chosen.size()]) continue;
      used[i] = true;
      chosen.push_back(i);
      bool stop = rec();
      chosen.pop_back();
      used[i] = false;
      if (stop) return true;
    }
    return false;
  };
  rec();
}

}  // namespace

bool full_entanglement_check(const StateTensor& s) {
  const size_t m = s.m(), n = s.n();
  return local_ranks(s) == LocalRanks{2, m, n} && n <= 2 * m;
}

EigenCanonicalization canonicalize_eigen(const std::vector<EigenEntry>& eigen) {
  EigenCanonicalization best;
  if (eigen.empty()) return best;
  std::vector<EigenEntry> sorted = eigen;
  std::sort(sorted.begin(), sorted.end(), key_less);
  const size_t k = std::min<size_t>(3, sorted.size());
  const Eigenvalue anchors[3] = {Eigenvalue(Qi(0)), Eigenvalue(Qi(1)), Eigenvalue::infinity()};
  std::vector<SizeSignature> pattern;
  for (size_t j = 0; j < k; ++j) pattern.push_back(sorted[j].sig);

  bool have = false;
  for_each_selection(sorted, pattern, [&](const std::vector<size_t>& sel) {
    // the selection must agree with the key order, i.e. tied entries only
    for (size_t j = 0; j < k; ++j)
      if (!same_key(sorted[sel[j]], sorted[j]) || sorted[sel[j]].weight() != sorted[j].weight()) return false;
    std::vector<Eigenvalue> from, to;
    for (size_t j = 0; j < k; ++j) {
      from.push_back(sorted[sel[j]].x);
      to.push_back(anchors[j]);
    }
    MoebiusMap f = map_through_points(from, to);
    std::vector<EigenEntry> head, rest;
    for (size_t j = 0; j < k; ++j) head.push_back({anchors[j], sorted[sel[j]].sig});
    for (size_t i = 0; i < sorted.size(); ++i)
      if (std::find(sel.begin(), sel.end(), i) == sel.end()) rest.push_back({f(sorted[i].x), sorted[i].sig});
    std::sort(rest.begin(), rest.end(), key_less);
    head.insert(head.end(), rest.begin(), rest.end());
    if (!have || entry_list_less(head, best.eigen)) {
      best.eigen = head;
      best.map = f;
      have = true;
    }
    return false;
  });
  return best;
}

SloccLabel label_from_structure(const KroneckerStructure& ks_in) {
  KroneckerStructure ks = ks_in;
  ks.canonicalize();
  SloccLabel l;
  l.m = ks.m();
  l.n = ks.n();
  l.h = ks.h;
  l.g = ks.g;
  l.eps = ks.eps;
  l.nu = ks.nu;
  std::map<SizeSignature, int> counts;
  for (const auto& e : ks.eigen) ++counts[e.sig];
  l.signature_multiset.assign(counts.begin(), counts.end());
  l.canonical_eigen = canonicalize_eigen(ks.eigen).eigen;
  return l;
}

SloccLabel slocc_label(const StateTensor& s) {
  if (!full_entanglement_check(s)) fail(ErrorKind::NotFullyEntangled, "state is not of full local ranks (2, m, n) with n <= 2m");
  return label_from_structure(kronecker_structure(pencil_from_state(s)));
}

std::string SloccLabel::to_string() const {
  KroneckerStructure ks;
  ks.h = h;
  ks.g = g;
  ks.eps = eps;
  ks.nu = nu;
  ks.eigen = canonical_eigen;
  return "2x" + std::to_string(m) + "x" + std::to_string(n) + " " + ks.to_string();
}

std::optional<MoebiusMap> moebius_between(const std::vector<EigenEntry>& xs, const std::vector<EigenEntry>& ys) {
  if (xs.size() != ys.size() || sorted_signatures(xs) != sorted_signatures(ys)) return std::nullopt;
  if (xs.empty()) return MoebiusMap::identity();
  const size_t k = std::min<size_t>(3, xs.size());
  std::vector<SizeSignature> pattern;
  std::vector<Eigenvalue> from;
  for (size_t j = 0; j < k; ++j) {
    pattern.push_back(xs[j].sig);
    from.push_back(xs[j].x);
  }
  std::optional<MoebiusMap> found;
  for_each_selection(ys, pattern, [&](const std::vector<size_t>& sel) {
    std::vector<Eigenvalue> to;
    for (size_t j : sel) to.push_back(ys[j].x);
    MoebiusMap f = map_through_points(from, to);
    for (const auto& x : xs) {
      Eigenvalue y = f(x.x);
      auto it = std::find_if(ys.begin(), ys.end(), [&](const EigenEntry& e) { return e.x == y; });
      if (it == ys.end() || it->sig != x.sig) return false;
    }
    found = f;
    return true;
  });
  return found;
}

std::optional<MoebiusMap> structures_slocc_related(const KroneckerStructure& a_in, const KroneckerStructure& b_in) {
  KroneckerStructure a = a_in, b = b_in;
  a.canonicalize();
  b.canonicalize();
  if (a.h != b.h || a.g != b.g || a.eps != b.eps || a.nu != b.nu) return std::nullopt;
  return moebius_between(a.eigen, b.eigen);
}

bool slocc_equivalent(const StateTensor& s1, const StateTensor& s2) {
  if (!full_entanglement_check(s1) || !full_entanglement_check(s2))
    fail(ErrorKind::NotFullyEntangled, "state is not of full local ranks");
  if (s1.m() != s2.m() || s1.n() != s2.n()) return false;
  return structures_slocc_related(kronecker_structure(pencil_from_state(s1)),
                                  kronecker_structure(pencil_from_state(s2)))
      .has_value();
}

KroneckerStructure generic_structure(int m, int n) {
  if (m < 1 || n < m || n > 2 * m) fail(ErrorKind::ShapeMismatch, "generic structure needs m <= n <= 2m");
  KroneckerStructure ks;
  if (n == m) {
    // one representative of the (m - 3)-parameter family: eigenvalues 0, 1, ..., m - 1
    for (int k = 0; k < m; ++k) ks.eigen.push_back({Eigenvalue(Qi(k)), {1}});
  } else {
    const int d = n - m, lo = m / d, extra = m % d;
    for (int k = 0; k < d - extra; ++k) ks.eps.push_back(lo);
    for (int k = 0; k < extra; ++k) ks.eps.push_back(lo + 1);
  }
  ks.canonicalize();
  return ks;
}

bool is_generic(const StateTensor& s) {
  if (!full_entanglement_check(s)) fail(ErrorKind::NotFullyEntangled, "state is not of full local ranks");
  const int m = static_cast<int>(s.m()), n = static_cast<int>(s.n());
  if (n < m) return false;
  KroneckerStructure ks = kronecker_structure(pencil_from_state(s));
  if (n > m) return ks == generic_structure(m, n);
  if (ks.h || ks.g || !ks.eps.empty() || !ks.nu.empty()) return false;
  if (static_cast<int>(ks.eigen.size()) != m) return false;
  return std::all_of(ks.eigen.begin(), ks.eigen.end(), [](const EigenEntry& e) { return e.sig == SizeSignature{1}; });
}

StateTensor representative_state(const KroneckerStructure& ks) { return state_from_pencil(assemble_kcf(ks)); }

}  // namespace kron
