#include "detflow/polyalg/json_io.hpp"

#include <limits>

#include "detflow/errors.hpp"
#include "detflow/polyalg/parser.hpp"

namespace detflow {

namespace {

json integer_to_json(const mpz_class& z) {
  if (z.fits_slong_p()) return json(z.get_si());
  return json(z.get_str());
}

mpz_class integer_from_json(const json& j) {
  if (j.is_number_integer()) return mpz_class(std::to_string(j.get<long long>()));
  if (j.is_string()) return mpz_class(j.get<std::string>());
  throw Error("expected an integer or a decimal string in polynomial JSON");
}

}  // namespace

json poly_to_json(const Poly& p) {
  json out = json::array();
  Shape shape = p.shape();
  for (const auto& [m, c] : p.terms()) {
    json exps = json::array();
    for (const auto& [v, e] : m.factors())
      exps.push_back({shape.row_of(v), shape.col_of(v), static_cast<int>(e)});
    out.push_back({{"exponents", exps},
                   {"coeff",
                    {integer_to_json(c.re().get_num()), integer_to_json(c.re().get_den()),
                     integer_to_json(c.im().get_num()), integer_to_json(c.im().get_den())}}});
  }
  return out;
}

Poly poly_from_json(const json& j, Shape shape) {
  if (!j.is_array()) throw Error("polynomial JSON must be a list of terms");
  Poly p(shape);
  for (const auto& term : j) {
    Monomial m;
    for (const auto& f : term.at("exponents")) {
      int e = f.at(2).get<int>();
      if (e <= 0) throw Error("polynomial JSON: exponents must be positive");
      m = m * Monomial::variable(shape.var(f.at(0).get<int>(), f.at(1).get<int>()), e);
    }
    const auto& c = term.at("coeff");
    mpq_class re(integer_from_json(c.at(0)), integer_from_json(c.at(1)));
    mpq_class im(integer_from_json(c.at(2)), integer_from_json(c.at(3)));
    if (sgn(re.get_den()) == 0 || sgn(im.get_den()) == 0)
      throw Error("polynomial JSON: zero denominator");
    p.add_term(m, GaussRat(re, im));
  }
  return p;
}

json rational_to_json(const RationalFn& f) {
  return {{"num", poly_to_json(f.num())}, {"den", poly_to_json(f.den())}};
}

RationalFn rational_from_json(const json& j, Shape shape) {
  return {poly_from_json(j.at("num"), shape), poly_from_json(j.at("den"), shape)};
}

json point_to_json(const MatrixPoint& x) {
  Shape s = x.shape();
  json rows = json::array();
  for (int i = 1; i <= s.rows; ++i) {
    json row = json::array();
    for (int j = 1; j <= s.cols; ++j) {
      if (x.has_exact()) {
        row.push_back(x.exact_values()[s.var(i, j)].render(true));
      } else {
        cplx v = x(i, j);
        row.push_back({v.real(), v.imag()});
      }
    }
    rows.push_back(row);
  }
  return {{"shape", {s.rows, s.cols}}, {"rows", rows}};
}

MatrixPoint point_from_json(const json& j) {
  const json& rows = j.is_object() ? j.at("rows") : j;
  if (!rows.is_array() || rows.empty() || !rows[0].is_array())
    throw Error("matrix JSON must be a non-empty list of rows");
  Shape shape{static_cast<int>(rows.size()), static_cast<int>(rows[0].size())};
  if (j.is_object() && j.contains("shape")) {
    Shape declared{j["shape"].at(0).get<int>(), j["shape"].at(1).get<int>()};
    if (declared != shape) throw ShapeMismatch("matrix JSON: rows do not match declared shape");
  }
  std::vector<cplx> values;
  std::vector<GaussRat> exact;
  bool all_exact = true;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != shape.cols) throw ShapeMismatch("matrix JSON: ragged rows");
    for (const auto& e : row) {
      if (e.is_string()) {
        RationalFn c = parse_rational(e.get<std::string>(), {1, 1});
        if (!c.is_polynomial() || !c.num().is_constant())
          throw Error("matrix JSON: entry '" + e.get<std::string>() + "' is not a constant");
        GaussRat g = c.num().constant_value();
        exact.push_back(g);
        values.push_back(g.to_complex());
      } else if (e.is_number_integer()) {
        exact.emplace_back(e.get<long>());
        values.emplace_back(static_cast<double>(e.get<long>()), 0.0);
      } else if (e.is_number()) {
        all_exact = false;
        values.emplace_back(e.get<double>(), 0.0);
      } else if (e.is_array() && e.size() == 2) {
        all_exact = false;
        values.emplace_back(e[0].get<double>(), e[1].get<double>());
      } else {
        throw Error("matrix JSON: unsupported entry " + e.dump());
      }
    }
  }
  if (all_exact) return MatrixPoint::exact(shape, std::move(exact));
  return {shape, std::move(values)};
}

}  // namespace detflow
