#include <doctest.h>

#include <random>

#include "detflow/errors.hpp"
#include "detflow/polyalg/compiled.hpp"
#include "detflow/polyalg/determinant.hpp"
#include "detflow/polyalg/json_io.hpp"
#include "detflow/polyalg/parser.hpp"
#include "oracles.hpp"

using namespace detflow;

namespace {

Poly x(Shape s, int i, int j) { return Poly::variable(s, i, j); }
Poly c(Shape s, long v) { return Poly::constant(s, GaussRat(v)); }

}  // namespace

TEST_CASE("gaussian rationals stay canonical") {
  const GaussRat a(mpq_class(2, 4), mpq_class(-3, 9));
  CHECK(a.re() == mpq_class(1, 2));
  CHECK(a.im() == mpq_class(-1, 3));
  CHECK(a * a.inverse() == GaussRat(1));
  CHECK((GaussRat::imaginary_unit() * GaussRat::imaginary_unit()) == GaussRat(-1));
  CHECK(GaussRat(mpq_class(3, 4)).render() == "3/4");
  CHECK(GaussRat(0, mpq_class(3, 4)).render() == "3i/4");
  CHECK(GaussRat(mpq_class(1, 2), mpq_class(3, 4)).render() == "(1/2 + 3i/4)");
}

TEST_CASE("shape indexing is row-major and range checked") {
  const Shape s{3, 4};
  CHECK(s.var(1, 1) == 0);
  CHECK(s.var(2, 3) == 6);
  CHECK(s.row_of(6) == 2);
  CHECK(s.col_of(6) == 3);
  CHECK_THROWS_AS(s.var(4, 1), IndexOutOfRange);
  CHECK_THROWS_AS(s.var(1, 0), IndexOutOfRange);
}

TEST_CASE("polynomial arithmetic examples") {
  const Shape s{2, 2};
  CHECK((x(s, 1, 1) - x(s, 1, 1)).is_zero());
  CHECK((x(s, 1, 1) + x(s, 1, 2)) * (x(s, 1, 1) - x(s, 1, 2)) == x(s, 1, 1).pow(2) - x(s, 1, 2).pow(2));

  const Poly d = x(s, 1, 1) * x(s, 2, 2) - x(s, 1, 2) * x(s, 2, 1);
  // Hand expansion of the square of the 2x2 determinant.
  const Poly hand = x(s, 1, 1).pow(2) * x(s, 2, 2).pow(2) - c(s, 2) * x(s, 1, 1) * x(s, 2, 2) * x(s, 1, 2) * x(s, 2, 1) +
                    x(s, 1, 2).pow(2) * x(s, 2, 1).pow(2);
  CHECK(d.pow(2) == hand);
  CHECK(d.pow(2).term_count() == 3);
  CHECK(d.render() == "x[1][1]*x[2][2] - x[1][2]*x[2][1]");
  CHECK_THROWS_AS(x(s, 1, 1) + Poly::variable(Shape{3, 3}, 1, 1), ShapeMismatch);
}

TEST_CASE("ring axioms hold exactly on random polynomials") {
  std::mt19937_64 rng(11);
  const Shape s{3, 3};
  for (int trial = 0; trial < 50; ++trial) {
    const Poly a = oracle::random_poly(s, rng), b = oracle::random_poly(s, rng), e = oracle::random_poly(s, rng);
    CHECK((a + b) - b == a);
    CHECK(a * b == b * a);
    CHECK(a * (b + e) == a * b + a * e);
    CHECK((a * b) * e == a * (b * e));
  }
}

TEST_CASE("differentiation") {
  const Shape s{2, 2};
  const Poly d = x(s, 1, 1) * x(s, 2, 2) - x(s, 1, 2) * x(s, 2, 1);
  CHECK(d.differentiate(2, 2) == x(s, 1, 1));
  CHECK(x(s, 1, 1).pow(3).differentiate(1, 1) == c(s, 3) * x(s, 1, 1).pow(2));

  std::mt19937_64 rng(5);
  const Shape t{3, 3};
  for (int trial = 0; trial < 30; ++trial) {
    const Poly f = oracle::random_poly(t, rng, 5, 4);
    const Poly g = oracle::random_poly(t, rng);
    for (int a = 0; a < 9; a += 2)
      for (int b = 1; b < 9; b += 3) {
        CHECK(f.diff_var(a).diff_var(b) == f.diff_var(b).diff_var(a));
        CHECK((f * g).diff_var(a) == f.diff_var(a) * g + f * g.diff_var(a));
      }
  }
}

TEST_CASE("cofactor derivative matches finite differences") {
  std::mt19937_64 rng(9);
  const Shape s{3, 3};
  const Poly m = submatrix_determinant(s, std::vector<int>{1, 2, 3}, std::vector<int>{1, 2, 3});
  const MatrixPoint p = random_rational_point(s, rng);
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      const cplx analytic = m.differentiate(i, j).evaluate(p.values());
      auto along = [&](cplx eps) {
        std::vector<cplx> v(p.values().begin(), p.values().end());
        v[s.var(i, j)] += eps;
        return m.evaluate(v);
      };
      CHECK(std::abs(oracle::derivative(along, 0.0) - analytic) < 1e-8);
    }
}

TEST_CASE("submatrix determinants agree with the Leibniz oracle") {
  for (Shape s : {Shape{3, 3}, Shape{4, 4}, Shape{2, 4}}) {
    const int r_max = std::min({s.rows, s.cols, 3});
    for (int r = 1; r <= r_max; ++r) {
      std::vector<int> rows(r), cols(r);
      std::iota(rows.begin(), rows.end(), 1);
      std::iota(cols.begin(), cols.end(), s.cols - r + 1);
      CHECK(submatrix_determinant(s, rows, cols) == oracle::leibniz_det(s, rows, cols));
    }
  }
  const Shape s{3, 3};
  const Poly full = submatrix_determinant(s, std::vector<int>{1, 2, 3}, std::vector<int>{1, 2, 3});
  CHECK(full.term_count() == 6);
  for (const auto& [mono, coeff] : full.terms()) CHECK((coeff == GaussRat(1) || coeff == GaussRat(-1)));
  // Unordered lists carry the permutation sign; repeats vanish.
  CHECK(submatrix_determinant(s, std::vector<int>{2, 1}, std::vector<int>{1, 2}) ==
        -submatrix_determinant(s, std::vector<int>{1, 2}, std::vector<int>{1, 2}));
  CHECK(submatrix_determinant(s, std::vector<int>{1, 1}, std::vector<int>{1, 2}).is_zero());
  CHECK_THROWS_AS(submatrix_determinant(s, std::vector<int>{1, 4}, std::vector<int>{1, 2}), IndexOutOfRange);
}

TEST_CASE("evaluation") {
  const Shape s2{2, 2};
  const Poly d = x(s2, 1, 1) * x(s2, 2, 2) - x(s2, 1, 2) * x(s2, 2, 1);
  CHECK(d.evaluate(MatrixPoint::identity(2).values()) == cplx(1));

  const RationalFn ratio(x(s2, 1, 2), x(s2, 2, 1));
  const MatrixPoint p(s2, {0.0, 2.0, 4.0, 0.0});
  CHECK(ratio.evaluate(p.values()) == cplx(0.5));
  CHECK_THROWS_AS(ratio.evaluate(MatrixPoint::identity(2).values()), DenominatorVanishes);
  CHECK_THROWS_AS(ratio.evaluate_exact(MatrixPoint::identity(2).exact_values()), DenominatorVanishes);

  std::mt19937_64 rng(3);
  const Shape s3{3, 3};
  const Poly minor23 = submatrix_determinant(s3, std::vector<int>{2, 3}, std::vector<int>{1, 2});
  for (int trial = 0; trial < 10; ++trial) {
    const MatrixPoint q = random_rational_point(s3, rng);
    CHECK(std::abs(minor23.evaluate(q.values()) - oracle::numeric_det(q, {2, 3}, {1, 2})) < 1e-12);
  }
}

TEST_CASE("evaluation is a ring homomorphism") {
  std::mt19937_64 rng(21);
  const Shape s{3, 3};
  for (int trial = 0; trial < 30; ++trial) {
    const Poly f = oracle::random_poly(s, rng), g = oracle::random_poly(s, rng);
    const auto exact = oracle::random_exact_values(s, rng);
    CHECK((f * g).evaluate_exact(exact) == f.evaluate_exact(exact) * g.evaluate_exact(exact));
    const MatrixPoint p = random_point(s, rng);
    const cplx lhs = (f * g).evaluate(p.values()), rhs = f.evaluate(p.values()) * g.evaluate(p.values());
    CHECK(std::abs(lhs - rhs) <= 1e-12 * (1 + std::abs(rhs)));
  }
}

TEST_CASE("rational functions") {
  const Shape s{2, 2};
  const RationalFn a(x(s, 1, 2), x(s, 2, 1));
  const RationalFn b(c(s, 2) * x(s, 1, 2), c(s, 2) * x(s, 2, 1));
  CHECK(a == b);
  CHECK(a.den().leading_coefficient() == GaussRat(1));
  CHECK((a * a.pow(-1)) == RationalFn(c(s, 1)));
  CHECK((a - a).is_zero());
  CHECK_THROWS((a / RationalFn(Poly(s))));
  CHECK_THROWS_AS(RationalFn(x(s, 1, 1), x(Shape{3, 3}, 1, 1)), ShapeMismatch);

  // Quotient rule against finite differences.
  std::mt19937_64 rng(17);
  const MatrixPoint p = random_point(s, rng);
  for (int v = 0; v < 4; ++v) {
    const cplx analytic = a.diff_var(v).evaluate(p.values());
    auto along = [&](cplx eps) {
      std::vector<cplx> w(p.values().begin(), p.values().end());
      w[v] += eps;
      return a.evaluate(w);
    };
    CHECK(std::abs(oracle::derivative(along, 0.0) - analytic) < 1e-7 * (1 + std::abs(analytic)));
  }
}

TEST_CASE("parser examples") {
  const Shape s2{2, 2}, s3{3, 3};
  const Expression e = parse_expr("det(1,2;1,2)", s2);
  REQUIRE(std::holds_alternative<Poly>(e));
  CHECK(std::get<Poly>(e) == x(s2, 1, 1) * x(s2, 2, 2) - x(s2, 1, 2) * x(s2, 2, 1));

  const Expression r = parse_expr("x[1][2]/x[2][1]", s2);
  REQUIRE(std::holds_alternative<RationalFn>(r));
  CHECK(std::get<RationalFn>(r).structurally_equal(RationalFn(x(s2, 1, 2), x(s2, 2, 1))));

  const RationalFn gz = parse_rational("det(1;3)/det(2,3;1,2)", s3);
  CHECK(gz == RationalFn(x(s3, 1, 3), x(s3, 2, 1) * x(s3, 3, 2) - x(s3, 2, 2) * x(s3, 3, 1)));

  CHECK(std::get<Poly>(parse_expr("2*x[1][1]^2 - (x[1][2] + i)*3", s2)) ==
        c(s2, 2) * x(s2, 1, 1).pow(2) - c(s2, 3) * x(s2, 1, 2) - Poly::constant(s2, GaussRat(0, 3)));
  CHECK(std::get<Poly>(parse_expr("-x[1][1]^2", s2)) == -x(s2, 1, 1).pow(2));
  CHECK(std::get<Poly>(parse_expr("0.25*x[1][1]", s2)) == Poly::constant(s2, GaussRat::rational(1, 4)) * x(s2, 1, 1));
  CHECK(std::get<Poly>(parse_expr("3i/4", s2)) == Poly::constant(s2, GaussRat(0, mpq_class(3, 4))));
  CHECK(parse_rational("x[1][1]^-2", s2) == RationalFn(c(s2, 1), x(s2, 1, 1).pow(2)));
}

TEST_CASE("parser errors carry positions") {
  const Shape s{2, 2};
  auto position = [&](const char* text) -> std::size_t {
    try {
      parse_expr(text, s);
    } catch (const ParseError& e) {
      return e.position();
    }
    return std::string::npos;
  };
  CHECK(position("x[1][1]*+") == 9);
  CHECK(position("x[1][1] $") == 8);
  CHECK(position("(x[1][1]") == 8);
  CHECK(position("x[1][1]/0") != std::string::npos);
  CHECK(position("det(1,2;1)") != std::string::npos);
  CHECK_THROWS_AS(parse_expr("x[3][1]", s), IndexOutOfRange);
}

TEST_CASE("render then parse is the identity") {
  std::mt19937_64 rng(77);
  const Shape s{3, 3};
  for (int trial = 0; trial < 40; ++trial) {
    const Poly p = oracle::random_poly(s, rng);
    CHECK(std::get<Poly>(parse_expr(p.render(), s)) == p);
    const Poly q = oracle::random_poly(s, rng);
    if (q.is_zero()) continue;
    const RationalFn f(p, q);
    CHECK(parse_rational(f.render(), s).structurally_equal(f));
  }
}

TEST_CASE("json round trips") {
  std::mt19937_64 rng(8);
  const Shape s{2, 3};
  for (int trial = 0; trial < 20; ++trial) {
    const Poly p = oracle::random_poly(s, rng);
    CHECK(poly_from_json(poly_to_json(p), s) == p);
  }
  // Coefficients beyond 64 bits travel as strings.
  const Poly big = Poly::constant(s, GaussRat(mpq_class("123456789012345678901234567890"))) * x(s, 1, 2);
  const json j = poly_to_json(big);
  CHECK(j.dump().find("\"123456789012345678901234567890\"") != std::string::npos);
  CHECK(poly_from_json(j, s) == big);

  const RationalFn f(x(s, 1, 1), x(s, 2, 3) + c(s, 1));
  CHECK(rational_from_json(rational_to_json(f), s).structurally_equal(f));

  const MatrixPoint exact = random_rational_point(s, rng);
  const MatrixPoint back = point_from_json(point_to_json(exact));
  REQUIRE(back.has_exact());
  for (int v = 0; v < s.size(); ++v) CHECK(back.exact_values()[v] == exact.exact_values()[v]);

  const MatrixPoint floating = random_point(s, rng);
  const MatrixPoint back2 = point_from_json(point_to_json(floating));
  for (int v = 0; v < s.size(); ++v) CHECK(back2.values()[v] == floating.values()[v]);
}

TEST_CASE("compiled functions match exact evaluation and finite differences") {
  std::mt19937_64 rng(4);
  const Shape s{3, 3};
  const RationalFn h = parse_rational("det(1,2;2,3)/x[3][1] + x[2][2]^2", s);
  const CompiledFunction f(h);
  const MatrixPoint p = random_point(s, rng);
  CHECK(std::abs(f.value(p.values()) - h.evaluate(p.values())) < 1e-13);
  const auto grad = f.gradient(p.values());
  for (int v = 0; v < s.size(); ++v) {
    auto along = [&](cplx eps) {
      std::vector<cplx> w(p.values().begin(), p.values().end());
      w[v] += eps;
      return f.value(w);
    };
    CHECK(std::abs(oracle::derivative(along, 0.0) - grad[v]) < 1e-7 * (1 + std::abs(grad[v])));
  }
}

TEST_CASE("random points are reproducible and in the unit square") {
  std::mt19937_64 a(99), b(99);
  const MatrixPoint p = random_point({3, 4}, a), q = random_point({3, 4}, b);
  for (int v = 0; v < 12; ++v) {
    CHECK(p.values()[v] == q.values()[v]);
    CHECK(p.values()[v].real() >= 0);
    CHECK(p.values()[v].real() <= 1);
    CHECK(p.values()[v].imag() >= 0);
    CHECK(p.values()[v].imag() <= 1);
  }
}
