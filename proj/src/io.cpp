#include "kron/io.hpp"

#include <array>
#include <utility>

#include "kron/errors.hpp"

namespace kron::io {

namespace {

using Kind = BlockStep::Kind;

const std::array<std::pair<Kind, const char*>, 10> kKindNames{{
    {Kind::BuildL, "BuildL"},
    {Kind::BuildLT, "BuildLT"},
    {Kind::LTfromM0, "LTfromM0"},
    {Kind::NewEigenvalue, "NewEigenvalue"},
    {Kind::NewInfinite, "NewInfinite"},
    {Kind::EnlargeM, "EnlargeM"},
    {Kind::EnlargeN, "EnlargeN"},
    {Kind::SeedFromM0, "SeedFromM0"},
    {Kind::CompanionL2, "CompanionL2"},
    {Kind::MergeL2IntoSeed, "MergeL2IntoSeed"},
}};

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorKind::Parse, std::string("missing field \"") + key + "\"");
  return j.at(key);
}

int integer(const Json& j, const char* what) {
  if (!j.is_number_integer()) fail(ErrorKind::Parse, std::string(what) + " must be an integer");
  return j.get<int>();
}

size_t count(const Json& j, const char* what) {
  int v = integer(j, what);
  if (v < 0) fail(ErrorKind::Parse, std::string(what) + " must be non-negative");
  return static_cast<size_t>(v);
}

std::vector<int> int_list(const Json& j, const char* what) {
  if (!j.is_array()) fail(ErrorKind::Parse, std::string(what) + " must be an array");
  std::vector<int> out;
  for (const Json& v : j) out.push_back(integer(v, what));
  return out;
}

Json optional_json(const std::optional<TransformWitness>& w) { return w ? to_json(*w) : Json(nullptr); }
Json optional_json(const std::optional<Obstruction>& ob) { return ob ? to_json(*ob) : Json(nullptr); }

Json eigen_json(const std::vector<EigenEntry>& eigen) {
  Json out = Json::array();
  for (const EigenEntry& e : eigen) out.push_back({{"x", to_json(e.x)}, {"sig", e.sig}});
  return out;
}

}  // namespace

Json to_json(const Qi& x) { return x.to_string(); }

Json to_json(const Eigenvalue& x) { return x.is_infinite() ? std::string("inf") : x.value().to_string(); }

Json to_json(const BinaryForm& f) {
  Json out = Json::array();
  for (const Qi& c : f.coeffs()) out.push_back(to_json(c));
  return out;
}

Json to_json(const Matrix& a) {
  Json out = Json::array();
  for (size_t i = 0; i < a.rows(); ++i) {
    Json row = Json::array();
    for (size_t j = 0; j < a.cols(); ++j) row.push_back(to_json(a(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

Json to_json(const StateTensor& s) {
  Json amps = Json::array();
  for (size_t a = 0; a < 2; ++a)
    for (size_t b = 0; b < s.m(); ++b)
      for (size_t c = 0; c < s.n(); ++c)
        if (!s(a, b, c).is_zero()) amps.push_back({{"a", a}, {"b", b}, {"c", c}, {"v", to_json(s(a, b, c))}});
  return {{"m", s.m()}, {"n", s.n()}, {"amplitudes", std::move(amps)}};
}

Json to_json(const Pencil& p) { return {{"m", p.m()}, {"n", p.n()}, {"R", to_json(p.R)}, {"S", to_json(p.S)}}; }

Json to_json(const KroneckerStructure& ks) {
  return {{"h", ks.h}, {"g", ks.g}, {"eps", ks.eps}, {"nu", ks.nu}, {"eigen", eigen_json(ks.eigen)}, {"name", ks.to_string()}};
}

Json to_json(const SloccLabel& label, const KroneckerStructure& ks) {
  Json sigs = Json::array();
  for (const auto& [sig, k] : label.signature_multiset) sigs.push_back({{"sig", sig}, {"count", k}});
  return {{"m", label.m},
          {"n", label.n},
          {"h", ks.h},
          {"g", ks.g},
          {"eps", ks.eps},
          {"nu", ks.nu},
          {"eigen", eigen_json(ks.eigen)},
          {"canonical_eigen", eigen_json(label.canonical_eigen)},
          {"signatures", std::move(sigs)},
          {"parameterized", label.parameterized()},
          {"label", label.to_string()}};
}

Json to_json(const TransformWitness& w) { return {{"A", to_json(w.A)}, {"B", to_json(w.B)}, {"C", to_json(w.C)}}; }

Json to_json(const BlockStep& step) {
  const char* name = "";
  for (const auto& [k, s] : kKindNames)
    if (k == step.kind) name = s;
  return {{"kind", name}, {"size", step.size}, {"from_l2", step.from_l2}, {"x", to_json(step.x)}, {"x2", to_json(step.x2)}};
}

Json to_json(const Obstruction& ob) {
  return {{"id", ob.id}, {"evidence", ob.evidence}, {"target_dm", to_json(ob.target_dm)}, {"target_d2", to_json(ob.target_d2)}};
}

Json to_json(const std::string& src, const std::string& dst, const ReachVerdict& v) {
  return {{"src", src},
          {"dst", dst},
          {"verdict", verdict_name(v.verdict)},
          {"method", v.method},
          {"witness", optional_json(v.witness)},
          {"obstruction", optional_json(v.obstruction)},
          {"annotation", v.annotation}};
}

Json to_json(const ResourceReport& r) {
  Json items = Json::array();
  for (const ReportItem& it : r.items)
    items.push_back({{"title", it.title}, {"total", it.total}, {"passed", it.passed}, {"failures", it.failures}, {"notes", it.notes}});
  return {{"m", r.m}, {"items", std::move(items)}};
}

Json to_json(const HierarchyGraph& g) {
  Json layers = Json::array(), edges = Json::array();
  for (const HierarchyLayer& l : g.layers) {
    Json ids = Json::array();
    for (const StructureSkeleton& s : l.skeletons) ids.push_back(s.id());
    layers.push_back({{"m", l.m}, {"n", l.n}, {"skeletons", std::move(ids)}});
  }
  for (const HierarchyEdge& e : g.edges)
    edges.push_back({{"src", g.layers[e.layer].skeletons[e.src].id()},
                     {"dst", g.layers[e.layer + 1].skeletons[e.dst].id()},
                     {"verdict", verdict_name(e.verdict)},
                     {"detail", e.detail}});
  return {{"layers", std::move(layers)}, {"edges", std::move(edges)}};
}

Qi scalar_from_json(const Json& j) {
  if (j.is_number_integer()) return Qi(mpq_class(j.get<long>()));
  if (!j.is_string()) fail(ErrorKind::Parse, "scalar must be a string");
  return Qi::parse(j.get<std::string>());
}

Eigenvalue eigenvalue_from_json(const Json& j) {
  if (j.is_number_integer()) return Eigenvalue(scalar_from_json(j));
  if (!j.is_string()) fail(ErrorKind::Parse, "eigenvalue must be a string");
  return Eigenvalue::parse(j.get<std::string>());
}

BinaryForm form_from_json(const Json& j) {
  if (!j.is_array()) fail(ErrorKind::Parse, "binary form must be an array");
  std::vector<Qi> c;
  for (const Json& v : j) c.push_back(scalar_from_json(v));
  return BinaryForm(std::move(c));
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array()) fail(ErrorKind::Parse, "matrix must be an array of rows");
  const size_t rows = j.size(), cols = rows ? j[0].size() : 0;
  Matrix a(rows, cols);
  for (size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) fail(ErrorKind::ShapeMismatch, "matrix rows differ in length");
    for (size_t k = 0; k < cols; ++k) a(i, k) = scalar_from_json(j[i][k]);
  }
  return a;
}

StateTensor state_from_json(const Json& j) {
  const size_t m = count(field(j, "m"), "m"), n = count(field(j, "n"), "n");
  StateTensor s(m, n);
  const Json& amps = field(j, "amplitudes");
  if (!amps.is_array()) fail(ErrorKind::Parse, "amplitudes must be an array");
  for (const Json& e : amps) {
    size_t a = count(field(e, "a"), "a"), b = count(field(e, "b"), "b"), c = count(field(e, "c"), "c");
    if (a > 1 || b >= m || c >= n) fail(ErrorKind::ShapeMismatch, "amplitude index outside 2 x m x n");
    s(a, b, c) = scalar_from_json(field(e, "v"));
  }
  return s;
}

Pencil pencil_from_json(const Json& j) {
  Matrix r = matrix_from_json(field(j, "R")), s = matrix_from_json(field(j, "S"));
  const size_t m = count(field(j, "m"), "m"), n = count(field(j, "n"), "n");
  for (const Matrix* a : {&r, &s})
    if (a->rows() != m || (m > 0 && a->cols() != n)) fail(ErrorKind::ShapeMismatch, "R and S must be m x n");
  if (m == 0) r = s = Matrix(0, n);
  return {std::move(r), std::move(s)};
}

KroneckerStructure structure_from_json(const Json& j) {
  KroneckerStructure ks;
  ks.h = j.contains("h") ? integer(j.at("h"), "h") : 0;
  ks.g = j.contains("g") ? integer(j.at("g"), "g") : 0;
  ks.eps = j.contains("eps") ? int_list(j.at("eps"), "eps") : std::vector<int>{};
  ks.nu = j.contains("nu") ? int_list(j.at("nu"), "nu") : std::vector<int>{};
  if (ks.h < 0 || ks.g < 0) fail(ErrorKind::Parse, "h and g must be non-negative");
  for (int v : ks.eps)
    if (v < 1) fail(ErrorKind::Parse, "eps entries must be positive (zero indices go in g)");
  for (int v : ks.nu)
    if (v < 1) fail(ErrorKind::Parse, "nu entries must be positive (zero indices go in h)");
  if (j.contains("eigen")) {
    if (!j.at("eigen").is_array()) fail(ErrorKind::Parse, "eigen must be an array");
    for (const Json& e : j.at("eigen")) {
      EigenEntry entry{eigenvalue_from_json(field(e, "x")), int_list(field(e, "sig"), "sig")};
      if (entry.sig.empty()) fail(ErrorKind::Parse, "empty size signature");
      for (int v : entry.sig)
        if (v < 1) fail(ErrorKind::Parse, "signature entries must be positive");
      for (const EigenEntry& other : ks.eigen)
        if (other.x == entry.x) fail(ErrorKind::DuplicateEigenvalues, "eigenvalue listed twice");
      ks.eigen.push_back(std::move(entry));
    }
  }
  ks.canonicalize();
  return ks;
}

TransformWitness witness_from_json(const Json& j) {
  return {matrix_from_json(field(j, "A")), matrix_from_json(field(j, "B")), matrix_from_json(field(j, "C"))};
}

BlockStep step_from_json(const Json& j) {
  BlockStep step;
  const Json& kind = field(j, "kind");
  bool known = false;
  for (const auto& [k, s] : kKindNames)
    if (kind.is_string() && kind.get<std::string>() == s) {
      step.kind = k;
      known = true;
    }
  if (!known) fail(ErrorKind::Parse, "unknown step kind");
  if (j.contains("size")) step.size = integer(j.at("size"), "size");
  if (j.contains("from_l2")) step.from_l2 = j.at("from_l2").get<bool>();
  if (j.contains("x")) step.x = eigenvalue_from_json(j.at("x"));
  if (j.contains("x2")) step.x2 = eigenvalue_from_json(j.at("x2"));
  return step;
}

std::vector<BlockStep> script_from_json(const Json& j) {
  if (!j.is_array()) fail(ErrorKind::Parse, "script must be an array of steps");
  std::vector<BlockStep> out;
  for (const Json& s : j) out.push_back(step_from_json(s));
  return out;
}

InputKind input_kind(const Json& j) {
  if (j.is_object() && j.contains("amplitudes")) return InputKind::State;
  if (j.is_object() && j.contains("R")) return InputKind::Pencil;
  if (j.is_object() && (j.contains("eps") || j.contains("nu") || j.contains("eigen"))) return InputKind::Structure;
  fail(ErrorKind::Parse, "input is neither a state, a pencil nor a structure");
}

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Parse, e.what());
  }
}

}  // namespace kron::io
