#pragma once

#include <json.hpp>

#include <optional>
#include <string>

#include "sfl/central.hpp"
#include "sfl/group_map.hpp"
#include "sfl/nullcone.hpp"
#include "sfl/transform.hpp"

namespace sfl::io {

using Json = nlohmann::json;

// Parse failures carry the JSON-pointer-like path of the offending field.
inline Error schema_error(const std::string& path, const std::string& what) {
  return Error("SchemaError", (path.empty() ? std::string("/") : path) + ": " + what);
}

Json field_to_json(const Field& field);
Field field_from_json(const Json& j, const std::string& path);

// GF(p) elements are integers in [0, p); rationals are integers or "num/den" strings.
Json scalar_to_json(const Fp& x);
Json scalar_to_json(const Rational& x);
template <class S>
S scalar_from_json(const Json& j, const Field& field, const std::string& path);

template <class S>
Json matrix_to_json(const Mat<S>& m);
// Row-major array of rows; `n` pins the size when given.
template <class S>
Mat<S> matrix_from_json(const Json& j, const Field& field, const std::string& path, std::optional<int> n = std::nullopt);

// One-line notation, 1-based.
Json perm_to_json(const Permutation& s);
Permutation perm_from_json(const Json& j, const std::string& path, std::optional<int> n = std::nullopt);

template <class S>
Json map_to_json(const GroupMap<S>& f);
template <class S>
GroupMap<S> map_from_json(const Json& j, const std::string& path = "");

// Field of a map document without building it.
Field map_field(const Json& j);

template <class S>
Json transformation_to_json(const TransformationMatrix<S>& u);
template <class S>
TransformationMatrix<S> transformation_from_json(const Json& j, const Field& field, const std::string& path = "");

template <class S>
Json witness_to_json(const CoherenceWitness<S>& w);
template <class S>
Json decomposition_to_json(const DecomposedForm<S>& d);
template <class S>
Json verdict_to_json(const TransformVerdict<S>& v);

Json subspace_to_json(const MatrixSubspace<Fp>& s);

// Built-in maps: NAME:ARGS[,FIELD] with FIELD = gfp:P or rational (default).
//   sgn:n  one:n  sgn-nfix:n,alpha,beta  ex-f4:x  ex-g:n[,x]  ex-h:n,x1,...,x_{n-1}
Json builtin_map(const std::string& spec);

// Inline JSON (leading '{' or '['), a file path, or, for maps, a built-in spec.
Json resolve_document(const std::string& arg);
Json resolve_map(const std::string& arg);

}  // namespace sfl::io
