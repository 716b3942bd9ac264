#pragma once

#include <json.hpp>

#include "detflow/polyalg/matrix_point.hpp"
#include "detflow/polyalg/rational_fn.hpp"

namespace detflow {

using json = nlohmann::json;

/// Canonical polynomial form: a list of
///   {"exponents": [[i, j, e], ...], "coeff": [re_num, re_den, im_num, im_den]}
/// in descending monomial order. Integers that do not fit in 64 bits are
/// written as decimal strings.
json poly_to_json(const Poly& p);
Poly poly_from_json(const json& j, Shape shape);

/// {"num": <poly>, "den": <poly>}
json rational_to_json(const RationalFn& f);
RationalFn rational_from_json(const json& j, Shape shape);

/// {"shape": [m, n], "rows": [[entry, ...], ...]} where each entry is
/// [re, im], a number, or a string holding an exact constant such as
/// "1/2 - 3i/4". The point is exact when every entry is a string or an
/// integer.
json point_to_json(const MatrixPoint& x);
MatrixPoint point_from_json(const json& j);

}  // namespace detflow
