#include "detflow/poisson/bracket.hpp"

#include <vector>

#include "detflow/errors.hpp"

namespace detflow {

namespace {

int sign(int v) { return (v > 0) - (v < 0); }

}  // namespace

int generator_coefficient(int k, int l, int i, int j) { return sign(i - k) + sign(j - l); }

Poly bracket_generators(int k, int l, int i, int j, Shape shape) {
  if (!shape.contains(k, l) || !shape.contains(i, j))
    throw IndexOutOfRange("generator bracket: coordinate outside " + shape.to_string());
  int c = generator_coefficient(k, l, i, j);
  if (c == 0) return Poly(shape);
  Monomial m = Monomial::variable(shape.var(i, l)) * Monomial::variable(shape.var(k, j));
  return Poly::monomial(shape, m, GaussRat(c));
}

const GeneratorRule& standard_rule() {
  static const GeneratorRule rule = [](Shape s, int k, int l, int i, int j) {
    return bracket_generators(k, l, i, j, s);
  };
  return rule;
}

Poly bracket(const Poly& f, const Poly& g, const GeneratorRule* rule) {
  if (f.shape() != g.shape()) throw ShapeMismatch("bracket: operands live on different shapes");
  Shape s = f.shape();
  Poly out(s);
  const auto fvars = f.variables();
  const auto gvars = g.variables();
  if (fvars.empty() || gvars.empty()) return out;

  std::vector<Poly> dg;
  dg.reserve(gvars.size());
  for (int b : gvars) dg.push_back(g.diff_var(b));

  for (int a : fvars) {
    // {x_a, g} first, then multiply by df/dx_a.
    Poly xa_g(s);
    int k = s.row_of(a), l = s.col_of(a);
    for (std::size_t bi = 0; bi < gvars.size(); ++bi) {
      int b = gvars[bi];
      if (a == b) continue;
      Poly gen = rule ? (*rule)(s, k, l, s.row_of(b), s.col_of(b))
                      : bracket_generators(k, l, s.row_of(b), s.col_of(b), s);
      if (gen.is_zero()) continue;
      xa_g += gen * dg[bi];
    }
    if (!xa_g.is_zero()) out += f.diff_var(a) * xa_g;
  }
  return out;
}

RationalFn bracket(const RationalFn& f, const RationalFn& g, const GeneratorRule* rule) {
  if (f.shape() != g.shape()) throw ShapeMismatch("bracket: operands live on different shapes");
  const Poly& a = f.num();
  const Poly& b = f.den();
  const Poly& c = g.num();
  const Poly& d = g.den();
  const bool b_const = b.is_constant();
  const bool d_const = d.is_constant();
  if (b_const && d_const) return RationalFn(bracket(a, c, rule));

  Poly num = b * d * bracket(a, c, rule);
  if (!d_const) num -= b * c * bracket(a, d, rule);
  if (!b_const) num -= a * d * bracket(b, c, rule);
  if (!b_const && !d_const) num += a * c * bracket(b, d, rule);
  Poly bb = b * b;
  Poly dd = d * d;
  return {num, bb * dd};
}

Poly jacobiator(int a, int b, int c, Shape shape, const GeneratorRule* rule) {
  Poly xa = Poly::from_var(shape, a);
  Poly xb = Poly::from_var(shape, b);
  Poly xc = Poly::from_var(shape, c);
  return bracket(xa, bracket(xb, xc, rule), rule) + bracket(xb, bracket(xc, xa, rule), rule) +
         bracket(xc, bracket(xa, xb, rule), rule);
}

CasimirCheck is_casimir(const RationalFn& h) {
  CasimirCheck out;
  Shape s = h.shape();
  for (int v = 0; v < s.size(); ++v) {
    RationalFn br = bracket(RationalFn(Poly::from_var(s, v)), h);
    if (!br.is_zero()) {
      out.is_casimir = false;
      out.witness_coord = std::make_pair(s.row_of(v), s.col_of(v));
      out.witness = br;
      return out;
    }
  }
  return out;
}

}  // namespace detflow
