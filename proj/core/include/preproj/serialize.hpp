#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "preproj/representation.hpp"

namespace preproj {

/// Insertion-ordered so that dumps are stable and hashable.
using Json = nlohmann::ordered_json;

/// "q", "gf:p", or {"p","k","modulus"} for proper extensions.
Json to_json(const Field& f);
/// Also accepts "gf:p^k" (canonical modulus).
Field field_from_json(const Json& j);
Field parse_field(const std::string& spec);

/// "a/b" over Q; an array of degree() coefficients over GF(p^k).
Json to_json(const Field& f, const Scalar& s);
/// Accepts the canonical forms plus integer and "a/b" strings over any field.
Scalar scalar_from_json(const Field& f, const Json& j);
Scalar parse_scalar(const Field& f, const std::string& s);

/// Row-major array of scalar rows.
Json to_json(const Matrix& m);

Json to_json(const Quiver& q);
Quiver quiver_from_json(const Json& j);
/// A built-in family name, or a path to a quiver JSON file.
Quiver resolve_quiver(const std::string& name_or_file);

Json to_json(const Representation& r);
Representation representation_from_json(const Json& j);

Json to_json(const PairRep& r);
PairRep pair_from_json(const Json& j);

/// {"dims": {vertex: int}, "bases": {vertex: basis matrix}}.
Json to_json(const Quiver& q, const SubRep& s);

/// {vertex: scalar}.
Json to_json(const Quiver& q, const Weights& w);
Weights weights_from_json(const Quiver& q, const Field& f, const Json& j);
/// JSON object text or inline "i=val,..."; missing vertices are zero.
Weights parse_weights(const Quiver& q, const Field& f, const std::string& text);

/// FNV-1a 64 over the compact serialization, as 16 hex digits.
std::string instance_hash(const PairRep& r);

}  // namespace preproj
