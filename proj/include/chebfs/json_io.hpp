#pragma once

// JSON forms:
//   matrix: {"order": k, "re": [[...]], "im": [[...]]}
//   path:   {"A": matrix, "D": [...]}
//   lattice points: [[I_0, ..., I_n], ...]

#include <vector>

#include <json.hpp>

#include "chebfs/linalg_hermitian.hpp"
#include "chebfs/okounkov_simplex.hpp"

namespace chebfs {

using Json = nlohmann::ordered_json;

Json matrix_to_json(const Matrix& m);
// Throws InvalidInputError on malformed input. "im" may be omitted.
Matrix matrix_from_json(const Json& j);

Json path_to_json(const FSGeodesicPath& path);
FSGeodesicPath path_from_json(const Json& j);

Json lattice_to_json(const std::vector<MultiIndex>& points);

Json vector_to_json(const RVector& v);

}  // namespace chebfs
