#pragma once

#include <functional>
#include <optional>

#include "detflow/polyalg/rational_fn.hpp"

namespace detflow {

/// Bracket of two generators, {x_kl, x_ij}, as a polynomial on `shape`.
using GeneratorRule = std::function<Poly(Shape shape, int k, int l, int i, int j)>;

/// {x_kl, x_ij} = (sign(i-k) + sign(j-l)) x_il x_kj on M_{m,n}.
Poly bracket_generators(int k, int l, int i, int j, Shape shape);

/// Integer structure constant sign(i-k) + sign(j-l) of the rule above.
int generator_coefficient(int k, int l, int i, int j);

/// The rule above as a GeneratorRule.
const GeneratorRule& standard_rule();

/// {f, g} = sum_{a,b} {x_a, x_b} df/dx_a dg/dx_b, optionally under a
/// non-standard generator rule.
Poly bracket(const Poly& f, const Poly& g, const GeneratorRule* rule = nullptr);

/// Quotient-rule extension: for f = a/b, g = c/d
///   {f, g} = (bd{a,c} - bc{a,d} - ad{b,c} + ac{b,d}) / (b^2 d^2)   (unreduced).
RationalFn bracket(const RationalFn& f, const RationalFn& g, const GeneratorRule* rule = nullptr);

/// {x_a, {x_b, x_c}} + {x_b, {x_c, x_a}} + {x_c, {x_a, x_b}} on variable indices.
Poly jacobiator(int a, int b, int c, Shape shape, const GeneratorRule* rule = nullptr);

struct CasimirCheck {
  bool is_casimir = true;
  /// First coordinate (i, j) in row-major order with {x_ij, h} != 0.
  std::optional<std::pair<int, int>> witness_coord;
  std::optional<RationalFn> witness;
};

CasimirCheck is_casimir(const RationalFn& h);

}  // namespace detflow
