#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "kron/hierarchy.hpp"
#include "kron/kcf.hpp"
#include "kron/pencil.hpp"
#include "kron/slocc.hpp"
#include "kron/transform.hpp"

// JSON encodings. Scalars are strings ("a/b+c/d i"), binary forms are arrays of coefficient strings
// by descending mu-degree. Malformed input throws Error(Parse); inconsistent shapes Error(ShapeMismatch).
namespace kron::io {

using Json = nlohmann::ordered_json;

Json to_json(const Qi& x);
Json to_json(const Eigenvalue& x);
Json to_json(const BinaryForm& f);
Json to_json(const Matrix& a);
Json to_json(const StateTensor& s);  // non-zero amplitudes only
Json to_json(const Pencil& p);
Json to_json(const KroneckerStructure& ks);
// The structure's fields (with its actual eigenvalues) plus the Moebius-normalised label.
Json to_json(const SloccLabel& label, const KroneckerStructure& ks);
Json to_json(const TransformWitness& w);
Json to_json(const BlockStep& step);
Json to_json(const Obstruction& ob);
// One report cell: src, dst, verdict, method, witness|null, obstruction|null, annotation.
Json to_json(const std::string& src, const std::string& dst, const ReachVerdict& v);
Json to_json(const ResourceReport& r);
Json to_json(const HierarchyGraph& g);

Qi scalar_from_json(const Json& j);
Eigenvalue eigenvalue_from_json(const Json& j);
BinaryForm form_from_json(const Json& j);
Matrix matrix_from_json(const Json& j);
StateTensor state_from_json(const Json& j);
Pencil pencil_from_json(const Json& j);
KroneckerStructure structure_from_json(const Json& j);
TransformWitness witness_from_json(const Json& j);
BlockStep step_from_json(const Json& j);
std::vector<BlockStep> script_from_json(const Json& j);

// Any of the three object kinds, told apart by their keys.
enum class InputKind { State, Pencil, Structure };
InputKind input_kind(const Json& j);

Json parse(const std::string& text);

}  // namespace kron::io
