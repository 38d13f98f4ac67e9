#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kron/kcf.hpp"
#include "kron/transform.hpp"

namespace kron {

// A class of full-entanglement structures with eigenvalues placed in slots 0, 1, inf and then the
// parameters p1.. (instantiated from the pool 2, 5, -1, 1+i).
struct StructureSkeleton {
  KroneckerStructure structure;                             // instantiated
  std::vector<std::pair<Eigenvalue, std::string>> slots;  // value and slot name, in slot order

  int m() const { return structure.m(); }
  int n() const { return structure.n(); }
  bool has_parameters() const;
  // Blocks with slot names, e.g. "L1+M2(0)+M1(p1)"; unique within a layer.
  std::string name() const;
  // "4x5 L1+M2(0)+M1(p1)"
  std::string id() const;
};

// Slot values in order: 0, 1, inf, then the parameter pool.
const std::vector<std::pair<Eigenvalue, std::string>>& skeleton_slot_pool();
// Places the eigenvalues of ks into canonical slots (eigenvalue values of ks are ignored).
StructureSkeleton make_skeleton(const KroneckerStructure& ks);
std::vector<StructureSkeleton> enumerate_skeletons(int m, int n);

struct Obstruction {
  std::string id;        // "LT-rank", "two-eigenvalue", "multiplicity", "L-degree", "single-eigenvalue"
  std::string evidence;  // the source property and the target divisor data it contradicts
  BinaryForm target_dm, target_d2;
};

// Every predicate certifying that src cannot reach dst by column operations, in a fixed order.
// Scope: same m, fewer columns; throws ScopeViolation otherwise.
std::vector<Obstruction> obstructions(const KroneckerStructure& src, const KroneckerStructure& dst);
// The first of them.
std::optional<Obstruction> obstruction_check(const KroneckerStructure& src, const KroneckerStructure& dst);
std::optional<Obstruction> obstruction_check(const StructureSkeleton& src, const StructureSkeleton& dst);

enum class Verdict { Yes, No, Unknown };
const char* verdict_name(Verdict v);

struct ReachVerdict {
  Verdict verdict = Verdict::Unknown;
  std::string method;  // builder name, "search", "obstruction" or "" for Unknown
  std::optional<TransformWitness> witness;  // Yes: maps the source representative onto the target one
  std::optional<Obstruction> obstruction;   // No
  std::string annotation;
};

struct ReachOptions {
  std::uint64_t seed = 0;
  std::size_t budget = 10000;
};

// Reach queries sharing one search cache per source.
class ReachEngine {
 public:
  explicit ReachEngine(ReachOptions opts = {}) : opts_(opts) {}

  ReachVerdict reach(const KroneckerStructure& src, const KroneckerStructure& dst);
  ReachVerdict reach(const StructureSkeleton& src, const StructureSkeleton& dst) {
    return reach(src.structure, dst.structure);
  }
  // Single verdicts composed along the path; Unknown absorbs, then No, else Yes with the product witness.
  ReachVerdict reach_path(const std::vector<KroneckerStructure>& path);
  const ReachOptions& options() const { return opts_; }

 private:
  const EliminationSearch& search_for(const Pencil& src);

  ReachOptions opts_;
  std::map<std::string, std::unique_ptr<EliminationSearch>> cache_;
};

ReachVerdict reach(const StructureSkeleton& src, const StructureSkeleton& dst, ReachOptions opts = {});

struct ReportItem {
  std::string title;
  int total = 0, passed = 0;
  std::vector<std::string> failures;  // skeleton ids not meeting the claim
  std::vector<std::string> notes;
};

struct ResourceReport {
  int m = 0;
  std::vector<ReportItem> items;
  std::string to_text() const;
};

// Common-resource checks for 2 x m x m (3 <= m <= 6).
ResourceReport resource_report(int m, ReachOptions opts = {});

struct HierarchyLayer {
  int m = 0, n = 0;
  std::vector<StructureSkeleton> skeletons;
};

struct HierarchyEdge {
  size_t layer = 0, src = 0, dst = 0;  // from layers[layer].skeletons[src] to layers[layer + 1].skeletons[dst]
  Verdict verdict = Verdict::Unknown;
  std::string detail;  // method or obstruction id
};

struct HierarchyGraph {
  std::vector<HierarchyLayer> layers;  // (m, n) descending
  std::vector<HierarchyEdge> edges;
};

// Layers (m, n_max) down to (m, m); generic_only keeps the generic class per layer.
HierarchyGraph build_hierarchy(int m, int n_max, ReachEngine& engine, bool generic_only = false);
std::string emit_graph(const HierarchyGraph& g);

}  // namespace kron
