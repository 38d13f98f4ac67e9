#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kron/errors.hpp"
#include "kron/hierarchy.hpp"
#include "kron/io.hpp"
#include "kron/kcf.hpp"
#include "kron/pencil.hpp"
#include "kron/slocc.hpp"
#include "kron/transform.hpp"

using namespace kron;
using io::Json;

namespace {

struct Config {
  std::vector<std::string> inputs;
  std::string format = "json";
  std::uint64_t seed = 0;
  std::size_t budget = 10000;
  int m = 0, n = 0;
  bool generic_only = false;
};

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Parse, "cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<Json> load(const Config& cfg, size_t want) {
  std::vector<std::string> paths = cfg.inputs;
  if (paths.empty() && want == 1) paths.push_back("-");
  if (paths.size() != want) fail(ErrorKind::Parse, "expected " + std::to_string(want) + " --input argument(s)");
  std::vector<Json> out;
  for (const std::string& p : paths) out.push_back(io::parse(read_input(p)));
  return out;
}

// A state, or the state of a pencil.
StateTensor as_state(const Json& j) {
  switch (io::input_kind(j)) {
    case io::InputKind::State: return io::state_from_json(j);
    case io::InputKind::Pencil: return state_from_pencil(io::pencil_from_json(j));
    case io::InputKind::Structure: return representative_state(io::structure_from_json(j));
  }
  fail(ErrorKind::Parse, "unreadable input");
}

void require_format(const Config& cfg, bool dot_allowed) {
  if (cfg.format != "json" && cfg.format != "text" && !(dot_allowed && cfg.format == "dot"))
    fail(ErrorKind::Parse, "unsupported --format " + cfg.format);
}

void emit(const Config& cfg, const Json& j, const std::string& text) {
  if (cfg.format == "json") std::cout << j.dump(2) << "\n";
  else std::cout << text;
}

void check(bool ok, const char* what) {
  if (!ok) throw std::logic_error(std::string("witness failed to verify: ") + what);
}

int cmd_kcf(const Config& cfg) {
  require_format(cfg, false);
  Json in = load(cfg, 1)[0];
  Pencil p = io::input_kind(in) == io::InputKind::Pencil ? io::pencil_from_json(in) : pencil_from_state(as_state(in));
  KcfReduction red = kcf_reduce(p);
  check(apply_bc(p, red.B, red.C) == red.kcf, "kcf");
  Json j{{"structure", io::to_json(red.structure)},
         {"kcf", io::to_json(red.kcf)},
         {"witness", {{"B", io::to_json(red.B)}, {"C", io::to_json(red.C)}}}};
  emit(cfg, j, "structure: " + red.structure.to_string() + "\n");
  return 0;
}

int cmd_classify(const Config& cfg) {
  require_format(cfg, false);
  StateTensor s = as_state(load(cfg, 1)[0]);
  SloccLabel label = slocc_label(s);
  emit(cfg, io::to_json(label, kronecker_structure(pencil_from_state(s))), "label: " + label.to_string() + "\n");
  return 0;
}

int cmd_equiv(const Config& cfg) {
  require_format(cfg, false);
  std::vector<Json> in = load(cfg, 2);
  StateTensor s1 = as_state(in[0]), s2 = as_state(in[1]);
  SloccLabel l1 = slocc_label(s1), l2 = slocc_label(s2);
  Json j{{"equivalent", false}, {"label_a", l1.to_string()}, {"label_b", l2.to_string()}, {"witness", nullptr}};
  if (l1 == l2) {
    Pencil p1 = pencil_from_state(s1), p2 = pencil_from_state(s2);
    std::optional<MoebiusMap> f = structures_slocc_related(kronecker_structure(p1), kronecker_structure(p2));
    TransformWitness w;
    bool found = f && find_equivalence(apply_alice(p1, *f), p2, w.B, w.C);
    if (found) {
      w.A = f->matrix();
      check(verify_witness(s1, w, s2), "equiv");
      j["equivalent"] = true;
      j["witness"] = io::to_json(w);
    }
  }
  emit(cfg, j, std::string("equivalent: ") + (j["equivalent"].get<bool>() ? "true" : "false") + "\n");
  return 0;
}

// The input as a structure, plus the witness taking the input state to the structure's representative.
struct Endpoint {
  KroneckerStructure ks;
  std::optional<StateTensor> state;
  TransformWitness to_rep, from_rep;
};

Endpoint endpoint(const Json& j) {
  Endpoint e;
  if (io::input_kind(j) == io::InputKind::Structure) {
    e.ks = io::structure_from_json(j);
    const size_t m = static_cast<size_t>(e.ks.m()), n = static_cast<size_t>(e.ks.n());
    e.to_rep = e.from_rep = {Matrix::identity(2), Matrix::identity(m), Matrix::identity(n)};
    return e;
  }
  e.state = as_state(j);
  KcfReduction red = kcf_reduce(pencil_from_state(*e.state));
  e.ks = red.structure;
  e.to_rep = {Matrix::identity(2), red.B, red.C};
  e.from_rep = {Matrix::identity(2), inverse(red.B), inverse(red.C)};
  return e;
}

std::string verdict_text(const ReachVerdict& v) {
  std::ostringstream os;
  os << "verdict: " << verdict_name(v.verdict) << "\n";
  if (!v.method.empty()) os << "method: " << v.method << "\n";
  if (v.obstruction) os << "obstruction: " << v.obstruction->id << " (" << v.obstruction->evidence << ")\n";
  if (!v.annotation.empty()) os << "note: " << v.annotation << "\n";
  return os.str();
}

int cmd_reach(const Config& cfg) {
  require_format(cfg, false);
  std::vector<Json> in = load(cfg, 2);
  Endpoint src = endpoint(in[0]), dst = endpoint(in[1]);
  ReachEngine engine(ReachOptions{cfg.seed, cfg.budget});
  ReachVerdict v = engine.reach(src.ks, dst.ks);
  if (v.witness) {
    TransformWitness w = compose(compose(src.to_rep, *v.witness), dst.from_rep);
    StateTensor from = src.state ? *src.state : representative_state(src.ks);
    StateTensor to = dst.state ? *dst.state : representative_state(dst.ks);
    check(verify_witness(from, w, to), "reach");
    v.witness = w;
  }
  emit(cfg, io::to_json(src.ks.to_string(), dst.ks.to_string(), v), verdict_text(v));
  return 0;
}

int cmd_generic(const Config& cfg) {
  require_format(cfg, false);
  KroneckerStructure ks = generic_structure(cfg.m, cfg.n);
  Json j{{"m", cfg.m}, {"n", cfg.n}, {"structure", io::to_json(ks)}, {"state", io::to_json(representative_state(ks))}, {"step", nullptr}};
  std::string text = "generic: " + ks.to_string() + "\n";
  if (cfg.n > cfg.m) {
    KroneckerStructure next = generic_structure(cfg.m, cfg.n - 1);
    ReachEngine engine(ReachOptions{cfg.seed, cfg.budget});
    ReachVerdict v = engine.reach(ks, next);
    if (v.witness) check(verify_witness(representative_state(ks), *v.witness, representative_state(next)), "generic");
    j["step"] = io::to_json(ks.to_string(), next.to_string(), v);
    text += "step to " + next.to_string() + ": " + verdict_name(v.verdict) + "\n";
  }
  emit(cfg, j, text);
  return 0;
}

int cmd_hierarchy(const Config& cfg) {
  require_format(cfg, true);
  const int n_max = cfg.n ? cfg.n : cfg.m + 1;
  if (cfg.m < 1 || n_max < cfg.m || n_max > 2 * cfg.m) fail(ErrorKind::ShapeMismatch, "hierarchy needs 1 <= m <= n <= 2m");
  ReachEngine engine(ReachOptions{cfg.seed, cfg.budget});
  HierarchyGraph g = build_hierarchy(cfg.m, n_max, engine, cfg.generic_only);
  if (cfg.format == "dot") {
    std::cout << emit_graph(g);
    return 0;
  }
  std::ostringstream os;
  for (const HierarchyEdge& e : g.edges)
    os << g.layers[e.layer].skeletons[e.src].id() << " -> " << g.layers[e.layer + 1].skeletons[e.dst].id() << ": "
       << verdict_name(e.verdict) << (e.detail.empty() ? "" : " (" + e.detail + ")") << "\n";
  emit(cfg, io::to_json(g), os.str());
  return 0;
}

int cmd_resource(const Config& cfg) {
  require_format(cfg, false);
  ResourceReport r = resource_report(cfg.m, ReachOptions{cfg.seed, cfg.budget});
  emit(cfg, io::to_json(r), r.to_text());
  return 0;
}

int report_error(const char* kind, int code, const std::string& message) {
  Json j{{"error", kind}, {"code", code}, {"message", message}};
  std::cerr << j.dump() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kronecker canonical forms and SLOCC reachability for 2 x m x n states"};
  app.require_subcommand(1);
  app.fallthrough();
  Config cfg;
  app.add_option("--input", cfg.inputs, "JSON input file ('-' for stdin); repeat for two-argument commands");
  app.add_option("--format", cfg.format, "json, text or dot")->check(CLI::IsMember({"json", "text", "dot"}));
  app.add_option("--seed", cfg.seed, "seed of the randomized elimination search");
  app.add_option("--budget", cfg.budget, "candidates tried by the elimination search");
  app.add_option("--m", cfg.m, "rows (Bob's dimension)");
  app.add_option("--n", cfg.n, "columns (Claire's dimension)");

  struct Command {
    const char* name;
    const char* help;
    int (*run)(const Config&);
  };
  const Command commands[] = {
      {"kcf", "Kronecker structure, canonical pencil and reduction witness of a pencil or state", cmd_kcf},
      {"classify", "SLOCC class label of a state", cmd_classify},
      {"equiv", "SLOCC equivalence of two states, with a witness", cmd_equiv},
      {"reach", "whether the first input can be transformed into the second", cmd_reach},
      {"generic", "generic class of 2 x m x n and its step to 2 x m x (n-1)", cmd_generic},
      {"hierarchy", "reachability graph between the layers (m, n) .. (m, m)", cmd_hierarchy},
      {"resource", "common-resource report for 2 x m x m", cmd_resource},
  };
  std::vector<std::pair<CLI::App*, const Command*>> subs;
  for (const Command& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    if (std::string(c.name) == "hierarchy") sub->add_flag("--generic-only", cfg.generic_only, "keep only the generic class per layer");
    subs.emplace_back(sub, &c);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error("Parse", 1, e.what());
  }

  try {
    for (auto [sub, c] : subs)
      if (sub->parsed()) return c->run(cfg);
  } catch (const Error& e) {
    return report_error(error_name(e.kind()), exit_code(e.kind()), e.what());
  } catch (const nlohmann::json::exception& e) {
    return report_error("Parse", 1, e.what());
  } catch (const std::exception& e) {
    return report_error("Internal", 1, e.what());
  }
  return 1;
}
