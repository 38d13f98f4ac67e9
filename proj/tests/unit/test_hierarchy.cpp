#include <map>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "kron/hierarchy.hpp"
#include "kron/slocc.hpp"

using namespace kron;
using testing_util::make_structure;

namespace {

// Number of integer partitions of k.
long partitions(int k) {
  std::vector<long> p(k + 1, 0);
  p[0] = 1;
  for (int part = 1; part <= k; ++part)
    for (int s = part; s <= k; ++s) p[s] += p[s - part];
  return p[k];
}

// Multisets of partitions with total weight q: coefficient of x^q in prod_k (1 - x^k)^(-p(k)).
long regular_parts(int q) {
  std::vector<long> c(q + 1, 0);
  c[0] = 1;
  for (int k = 1; k <= q; ++k) {
    // multiply by (1 - x^k)^(-p(k)) one factor at a time
    for (long t = 0; t < partitions(k); ++t)
      for (int s = k; s <= q; ++s) c[s] += c[s - k];
  }
  return c[q];
}

// Multisets of `count` integers >= 1 with the given sum.
long multisets(int sum, int count, int lo = 1) {
  if (count == 0) return sum == 0 ? 1 : 0;
  long total = 0;
  for (int v = lo; v * count <= sum; ++v) total += multisets(sum - v, count - 1, v);
  return total;
}

// Counting oracle for full-entanglement skeletons in (m, n).
long skeleton_count_oracle(int m, int n) {
  long total = 0;
  const int d = n - m;
  for (int nus = 0; nus <= m; ++nus) {
    const int epss = nus + d;
    for (int se = 0; se <= m; ++se)
      for (int sn = 0; se + sn + nus <= m; ++sn) {
        long ways = multisets(se, epss) * multisets(sn, nus);
        if (!ways) continue;
        const int q = m - se - sn - nus;
        long regular = regular_parts(q);
        if (epss == 0 && nus == 0) regular -= 1;  // a single eigenvalue with 1 x 1 blocks only
        total += ways * regular;
      }
  }
  return total;
}

std::vector<KroneckerStructure> sixteen_classes() {
  return {
      make_structure({}, {}, {{"0", {1}}, {"1", {1}}, {"2", {1}}, {"inf", {1}}}),
      make_structure({}, {}, {{"0", {1, 1}}, {"1", {1}}, {"inf", {1}}}),
      make_structure({}, {}, {{"0", {1, 1, 1}}, {"1", {1}}}),
      make_structure({}, {}, {{"0", {2, 1}}, {"1", {1}}}),
      make_structure({}, {}, {{"0", {3}}, {"1", {1}}}),
      make_structure({}, {}, {{"0", {1, 1}}, {"1", {1, 1}}}),
      make_structure({}, {}, {{"0", {2}}, {"1", {1, 1}}}),
      make_structure({}, {}, {{"0", {2}}, {"1", {2}}}),
      make_structure({}, {}, {{"0", {2}}, {"1", {1}}, {"inf", {1}}}),
      make_structure({}, {}, {{"0", {2, 1, 1}}}),
      make_structure({}, {}, {{"0", {2, 2}}}),
      make_structure({}, {}, {{"0", {3, 1}}}),
      make_structure({}, {}, {{"0", {4}}}),
      make_structure({1}, {1}, {{"0", {1}}}),
      make_structure({1}, {2}, {}),
      make_structure({2}, {1}, {}),
  };
}

}  // namespace

TEST_CASE("counting oracle sanity") {
  CHECK(regular_parts(4) == 14);
  CHECK(skeleton_count_oracle(4, 4) == 16);
  CHECK(skeleton_count_oracle(2, 2) == 2);
}

TEST_CASE("skeleton enumeration matches the counting oracle") {
  for (int m = 1; m <= 6; ++m)
    for (int n = m; n <= 2 * m; ++n) CHECK_MESSAGE(enumerate_skeletons(m, n).size() == skeleton_count_oracle(m, n), m, "x", n);
  CHECK(enumerate_skeletons(3, 4).size() == 5);
  CHECK_THROWS_AS(enumerate_skeletons(3, 7), Error);
}

TEST_CASE("the sixteen 4 x 4 classes") {
  std::vector<StructureSkeleton> sk = enumerate_skeletons(4, 4);
  REQUIRE(sk.size() == 16);
  std::vector<KroneckerStructure> classes = sixteen_classes();
  std::vector<int> hits(classes.size(), 0);
  for (const StructureSkeleton& s : sk) {
    int matched = 0;
    for (size_t k = 0; k < classes.size(); ++k)
      if (structures_slocc_related(s.structure, classes[k])) {
        ++hits[k];
        ++matched;
      }
    CHECK_MESSAGE(matched == 1, s.id());
  }
  for (int h : hits) CHECK(h == 1);
  // only the four-eigenvalue family carries a parameter
  int with_params = 0;
  for (const StructureSkeleton& s : sk) with_params += s.has_parameters();
  CHECK(with_params == 1);
}

TEST_CASE("the two 2 x 2 classes") {
  std::vector<StructureSkeleton> sk = enumerate_skeletons(2, 2);
  REQUIRE(sk.size() == 2);
  KroneckerStructure ghz = make_structure({}, {}, {{"0", {1}}, {"inf", {1}}});
  KroneckerStructure w = make_structure({}, {}, {{"inf", {2}}});
  CHECK(((structures_slocc_related(sk[0].structure, ghz) && structures_slocc_related(sk[1].structure, w)) ||
         (structures_slocc_related(sk[1].structure, ghz) && structures_slocc_related(sk[0].structure, w))));
}

TEST_CASE("skeleton layers are distinct, fully entangled and of the right shape") {
  for (int m = 2; m <= 5; ++m)
    for (int n = m; n <= 2 * m; ++n) {
      std::set<std::string> ids;
      for (const StructureSkeleton& s : enumerate_skeletons(m, n)) {
        CHECK(s.m() == m);
        CHECK(s.n() == n);
        CHECK(ids.insert(s.id()).second);
        CHECK(full_entanglement_check(representative_state(s.structure)));
      }
      // no two skeletons in a layer are SLOCC equivalent (parameter-free ones)
      std::vector<StructureSkeleton> layer = enumerate_skeletons(m, n);
      for (size_t a = 0; a < layer.size(); ++a)
        for (size_t b = a + 1; b < layer.size(); ++b)
          if (!layer[a].has_parameters() && !layer[b].has_parameters())
            CHECK_FALSE(structures_slocc_related(layer[a].structure, layer[b].structure));
    }
}

TEST_CASE("obstruction examples") {
  KroneckerStructure p1 = make_structure({}, {}, {{"0", {1}}, {"1", {1}}, {"2", {1}}, {"inf", {1}}});
  KroneckerStructure m4 = make_structure({}, {}, {{"0", {4}}});
  auto ob = obstruction_check(make_structure({1, 1}, {1}, {}), p1);
  REQUIRE(ob.has_value());
  CHECK(ob->id == "LT-rank");
  // eigenvalues {0, 1} in the source: M4(x) has one root; four distinct roots are squarefree
  KroneckerStructure two = make_structure({1}, {}, {{"0", {2}}, {"1", {1}}});
  ob = obstruction_check(two, m4);
  REQUIRE(ob.has_value());
  CHECK(ob->id == "two-eigenvalue");
  CHECK(ob->target_dm == BinaryForm::linear(Qi(0)) * BinaryForm::linear(Qi(0)) * BinaryForm::linear(Qi(0)) * BinaryForm::linear(Qi(0)));
  ob = obstruction_check(two, p1);
  REQUIRE(ob.has_value());
  CHECK(ob->id == "multiplicity");
  // long right index against (m-1) M1(x1) + M1(x2)
  KroneckerStructure p3 = make_structure({}, {}, {{"0", {1, 1, 1}}, {"1", {1}}});
  ob = obstruction_check(make_structure({4}, {}, {}), p3);
  REQUIRE(ob.has_value());
  CHECK(ob->id == "L-degree");
  CHECK(ob->target_d2.degree() == 1);
  // eigenvalue source against an all-L target
  std::vector<Obstruction> all = obstructions(make_structure({1, 1, 1}, {}, {{"0", {1}}}), make_structure({4}, {}, {}));
  REQUIRE(all.size() == 1);
  CHECK(all[0].id == "single-eigenvalue");
  // no eigenvalues: silent
  CHECK_FALSE(obstruction_check(make_structure({4}, {}, {}), p1).has_value());
  CHECK_FALSE(obstruction_check(make_structure({2, 2}, {}, {}), p1).has_value());
  CHECK(obstruction_check(make_structure({2, 2}, {}, {}), p3).has_value());
  try {
    obstructions(make_structure({4}, {}, {}), make_structure({3}, {}, {}));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ScopeViolation);
  }
  CHECK_THROWS_AS(obstructions(make_structure({1, 1}, {}, {}), make_structure({1, 1}, {}, {})), Error);
}

TEST_CASE("obstructions never contradict the search on the m = 4 grid") {
  int fired = 0, found = 0;
  for (int n = 5; n <= 7; ++n) {
    std::vector<StructureSkeleton> targets = enumerate_skeletons(4, n - 1);
    for (const StructureSkeleton& s : enumerate_skeletons(4, n)) {
      EliminationSearch search(assemble_kcf(s.structure), 0, 1500);
      for (const StructureSkeleton& t : targets) {
        bool blocked = obstruction_check(s, t).has_value();
        std::optional<TransformWitness> w = search.find(t.structure);
        CHECK_MESSAGE(!(blocked && w), s.id(), " -> ", t.id());
        fired += blocked;
        found += w.has_value();
        if (w) CHECK(verify_pencil_witness(assemble_kcf(s.structure), *w, assemble_kcf(t.structure)));
      }
    }
  }
  CHECK(fired > 50);
  CHECK(found > 50);
}

TEST_CASE("reach: constructive families") {
  ReachEngine engine;
  for (int m = 3; m <= 4; ++m)
    for (int n = m + 1; n <= 2 * m; ++n) {
      ReachVerdict v = engine.reach(generic_structure(m, n), generic_structure(m, n - 1));
      CHECK(v.verdict == Verdict::Yes);
      CHECK(v.method == (n == m + 1 ? "lm_to_distinct" : "generic_step"));
    }
  ReachVerdict v = engine.reach(make_structure({}, {}, {{"0", {1}}, {"1", {1}}, {"inf", {1}}}), make_structure({2}, {}, {}));
  CHECK(v.verdict == Verdict::Yes);
  CHECK(v.method == "distinct_to_lm");
  KroneckerStructure omega = make_structure({1, 2}, {}, {{"0", {1}}});
  for (const StructureSkeleton& t : enumerate_skeletons(4, 4)) {
    v = engine.reach(omega, t.structure);
    CHECK_MESSAGE(v.verdict == Verdict::Yes, t.id());
    REQUIRE(v.witness.has_value());
    CHECK(verify_witness(representative_state(omega), *v.witness, representative_state(t.structure)));
  }
  v = engine.reach(make_structure({3}, {}, {}), make_structure({}, {}, {{"1", {2}}, {"5", {1}}}));
  CHECK(v.verdict == Verdict::Yes);
  CHECK(v.method == "lm_to_companion");
}

TEST_CASE("reach: search, equivalence and refusals") {
  ReachEngine engine;
  KroneckerStructure src = make_structure({2}, {}, {{"0", {1}}});
  for (const StructureSkeleton& t : enumerate_skeletons(3, 3)) {
    ReachVerdict v = engine.reach(src, t.structure);
    if (t.structure == make_structure({1}, {1}, {})) {
      CHECK(v.verdict == Verdict::Unknown);
      CHECK(v.annotation.find("L1+LT1") != std::string::npos);
    } else {
      CHECK_MESSAGE(v.verdict == Verdict::Yes, t.id());
    }
  }
  // row removal via the transposed search
  ReachVerdict v = engine.reach(make_structure({}, {}, {{"0", {1, 1}}, {"1", {1}}}), make_structure({1}, {}, {{"0", {1}}}));
  CHECK(v.verdict == Verdict::Yes);
  CHECK(v.method == "search");
  // same shape: SLOCC equivalence or a refusal by invariants
  v = engine.reach(make_structure({}, {}, {{"0", {1}}, {"inf", {1}}}), make_structure({}, {}, {{"3", {1}}, {"1i", {1}}}));
  CHECK(v.verdict == Verdict::Yes);
  v = engine.reach(make_structure({}, {}, {{"0", {1}}, {"inf", {1}}}), make_structure({}, {}, {{"3", {2}}}));
  CHECK(v.verdict == Verdict::No);
  v = engine.reach(make_structure({1, 1}, {1}, {}), make_structure({}, {}, {{"0", {1}}, {"1", {1}}, {"2", {1}}, {"inf", {1}}}));
  CHECK(v.verdict == Verdict::No);
  REQUIRE(v.obstruction.has_value());
  CHECK(v.obstruction->id == "LT-rank");
  CHECK_THROWS_AS(engine.reach(make_structure({1}, {}, {}), make_structure({2}, {}, {})), Error);
}

TEST_CASE("reach along paths") {
  ReachEngine engine;
  std::vector<KroneckerStructure> chain;
  for (int n = 8; n >= 4; --n) chain.push_back(generic_structure(4, n));
  ReachVerdict v = engine.reach_path(chain);
  CHECK(v.verdict == Verdict::Yes);
  REQUIRE(v.witness.has_value());
  CHECK(verify_witness(representative_state(chain.front()), *v.witness, representative_state(chain.back())));
  // an Unknown step absorbs the rest of the path
  v = engine.reach_path({make_structure({1, 2}, {}, {{"0", {1}}}), make_structure({2}, {}, {{"0", {1}}}),
                         make_structure({1}, {1}, {})});
  CHECK(v.verdict == Verdict::Unknown);
  CHECK_FALSE(v.witness.has_value());
}

TEST_CASE("resource reports") {
  ResourceReport r = resource_report(4);
  REQUIRE(r.items.size() == 4);
  CHECK(r.items[0].total == 16);
  CHECK(r.items[0].passed == 16);
  CHECK(r.items[1].total == 12);
  CHECK(r.items[1].passed == 12);
  CHECK(r.items[2].passed == r.items[2].total);
  CHECK(r.items[3].passed == 16);
  CHECK(r.to_text().find("L1+L1+L2: unknown") != std::string::npos);
  r = resource_report(3);
  CHECK(r.items[0].passed == 5);
  CHECK(r.items[0].failures.size() == 1);
  CHECK(r.items[1].passed == 6);
  CHECK_THROWS_AS(resource_report(7), Error);
}

TEST_CASE("hierarchy graphs") {
  ReachEngine engine;
  HierarchyGraph stair = build_hierarchy(3, 6, engine, true);
  REQUIRE(stair.layers.size() == 4);
  REQUIRE(stair.edges.size() == 3);
  for (const HierarchyEdge& e : stair.edges) CHECK(e.verdict == Verdict::Yes);
  std::string dot = emit_graph(stair);
  CHECK(dot.rfind("digraph hierarchy {", 0) == 0);
  CHECK(dot.find("\"3x6 L1+L1+L1\" -> \"3x5 L1+L2\" [style=solid, label=\"generic_step\"];") != std::string::npos);
  CHECK(dot == emit_graph(build_hierarchy(3, 6, engine, true)));

  HierarchyGraph single;
  single.layers.push_back({2, 2, {enumerate_skeletons(2, 2)[0]}});
  std::string one = emit_graph(single);
  CHECK(std::count(one.begin(), one.end(), '[') == 2);  // node attributes only
  CHECK(one.find("->") == std::string::npos);

  ReachEngine quick(ReachOptions{0, 300});
  HierarchyGraph g = build_hierarchy(4, 6, quick);
  REQUIRE(g.layers.size() == 3);
  CHECK(g.edges.size() == 6 * 12 + 12 * 16);
  std::string text = emit_graph(g);
  size_t solid = 0, dotted = 0, refuted = 0;
  for (const HierarchyEdge& e : g.edges) {
    ReachVerdict v = quick.reach(g.layers[e.layer].skeletons[e.src], g.layers[e.layer + 1].skeletons[e.dst]);
    CHECK(v.verdict == e.verdict);
    solid += e.verdict == Verdict::Yes;
    dotted += e.verdict == Verdict::Unknown;
    refuted += e.verdict == Verdict::No;
  }
  auto count = [&](const std::string& needle) {
    size_t c = 0;
    for (size_t p = text.find(needle); p != std::string::npos; p = text.find(needle, p + 1)) ++c;
    return c;
  };
  CHECK(count("style=solid") == solid);
  CHECK(count("style=dotted") == dotted);
  CHECK(count(" -/-> ") == refuted);
}
