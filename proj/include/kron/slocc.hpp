#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kron/kcf.hpp"
#include "kron/pencil.hpp"

namespace kron {

// SLOCC class label: Kronecker data with eigenvalues normalised modulo Moebius maps.
struct SloccLabel {
  int m = 0, n = 0;
  int h = 0, g = 0;
  std::vector<int> eps, nu;
  std::vector<std::pair<SizeSignature, int>> signature_multiset;  // sorted, with counts
  // First up to three entries sit at 0, 1, inf; the rest are the free parameters.
  std::vector<EigenEntry> canonical_eigen;
  // More than three eigenvalues: the residual values are a chosen parameterisation.
  bool parameterized() const { return canonical_eigen.size() > 3; }

  friend bool operator==(const SloccLabel&, const SloccLabel&) = default;
  std::string to_string() const;
};

bool full_entanglement_check(const StateTensor& s);

struct EigenCanonicalization {
  std::vector<EigenEntry> eigen;  // canonical order
  MoebiusMap map;                 // sends the input eigenvalues to `eigen`
};
EigenCanonicalization canonicalize_eigen(const std::vector<EigenEntry>& eigen);

SloccLabel label_from_structure(const KroneckerStructure& ks);
SloccLabel slocc_label(const StateTensor& s);

// A Moebius map f with f(xs) = ys as signature-labelled sets.
std::optional<MoebiusMap> moebius_between(const std::vector<EigenEntry>& xs, const std::vector<EigenEntry>& ys);
// Same indices and a Moebius map matching the eigenvalues; returns that map.
std::optional<MoebiusMap> structures_slocc_related(const KroneckerStructure& a, const KroneckerStructure& b);
bool slocc_equivalent(const StateTensor& s1, const StateTensor& s2);

KroneckerStructure generic_structure(int m, int n);
bool is_generic(const StateTensor& s);
StateTensor representative_state(const KroneckerStructure& ks);

}  // namespace kron
