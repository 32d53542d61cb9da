#pragma once

#include <nlohmann/json.hpp>

#include "symfix/multivector.hpp"
#include "symfix/qmat.hpp"

namespace symfix {

/// All configs and reports use insertion-ordered JSON so that a fixed
/// emission order yields byte-identical documents.
using Json = nlohmann::ordered_json;

namespace exalg {

/// {"deg": k, "terms": [{"idx": [i1, ...], "num": "p", "den": "q"}, ...]}
/// with terms in lexicographic tuple order.
Json multivector_to_json(const MultiVector& v);

/// Inverse of multivector_to_json; the ambient dimension is contextual.
MultiVector multivector_from_json(const Json& j, int n);

Json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const Json& j);

Json qmat_to_json(const QMat& m);
QMat qmat_from_json(const Json& j);

}  // namespace exalg
}  // namespace symfix
