#include <doctest.h>

#include <random>

#include "detflow/errors.hpp"
#include "detflow/flows/numeric_flow.hpp"
#include "detflow/poisson/bracket.hpp"
#include "detflow/poisson/field.hpp"
#include "detflow/poisson/minor.hpp"
#include "detflow/polyalg/parser.hpp"
#include "oracles.hpp"

using namespace detflow;

namespace {

Poly x(Shape s, int i, int j) { return Poly::variable(s, i, j); }
Poly c(Shape s, long v) { return Poly::constant(s, GaussRat(v)); }

}  // namespace

TEST_CASE("generator brackets") {
  const Shape s{2, 2};
  CHECK(bracket(x(s, 1, 1), x(s, 2, 1)) == x(s, 1, 1) * x(s, 2, 1));
  CHECK(bracket(x(s, 1, 2), x(s, 2, 1)).is_zero());
  CHECK(bracket(x(s, 1, 1), x(s, 2, 2)) == c(s, 2) * x(s, 1, 2) * x(s, 2, 1));
  CHECK(bracket_generators(1, 1, 2, 2, s) == c(s, 2) * x(s, 1, 2) * x(s, 2, 1));
  CHECK(generator_coefficient(1, 2, 2, 1) == 0);
  const Poly det = x(s, 1, 1) * x(s, 2, 2) - x(s, 1, 2) * x(s, 2, 1);
  CHECK(bracket(x(s, 1, 1), det).is_zero());
  CHECK(bracket(det, x(s, 1, 1)).is_zero());
}

TEST_CASE("bracket matches the definition oracle") {
  std::mt19937_64 rng(1);
  for (Shape s : {Shape{3, 3}, Shape{2, 4}}) {
    for (int trial = 0; trial < 20; ++trial) {
      const Poly f = oracle::random_poly(s, rng), g = oracle::random_poly(s, rng);
      CHECK(bracket(f, g) == oracle::bracket_by_definition(f, g));
    }
  }
}

TEST_CASE("antisymmetry and Leibniz on random polynomials") {
  std::mt19937_64 rng(2);
  const Shape s{3, 3};
  for (int trial = 0; trial < 40; ++trial) {
    const Poly f = oracle::random_poly(s, rng), g = oracle::random_poly(s, rng), h = oracle::random_poly(s, rng);
    CHECK(bracket(f, f).is_zero());
    CHECK(bracket(f, g) == -bracket(g, f));
    CHECK(bracket(f, g * h) == bracket(f, g) * h + g * bracket(f, h));
  }
}

TEST_CASE("Jacobi identity on every generator triple") {
  for (Shape s : {Shape{3, 3}, Shape{2, 4}}) {
    for (int a = 0; a < s.size(); ++a)
      for (int b = a + 1; b < s.size(); ++b)
        for (int e = b + 1; e < s.size(); ++e) CHECK(jacobiator(a, b, e, s).is_zero());
  }
}

TEST_CASE("a corrupted structure constant breaks Jacobi") {
  const GeneratorRule broken = [](Shape s, int k, int l, int i, int j) {
    Poly p = bracket_generators(k, l, i, j, s);
    if (k == 1 && l == 1 && i == 1 && j == 2) p = p + p;
    if (k == 1 && l == 2 && i == 1 && j == 1) p = p + p;
    return p;
  };
  const Shape s{2, 2};
  bool any = false;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      for (int e = b + 1; e < 4; ++e) any = any || !jacobiator(a, b, e, s, &broken).is_zero();
  CHECK(any);
}

TEST_CASE("rational brackets") {
  const Shape s{2, 2};
  const RationalFn ratio(x(s, 1, 2), x(s, 2, 1));
  CHECK(bracket(RationalFn(x(s, 1, 1)), ratio).is_zero());
  const RationalFn f(x(s, 1, 1), x(s, 2, 2) + c(s, 1));
  CHECK(bracket(f, f).is_zero());
  // Quotient rule against the polynomial Leibniz rule: {a/b, g} b^2 = {a,g} b - a {b,g}.
  const Poly a = x(s, 1, 1) * x(s, 1, 2), b = x(s, 2, 2) + c(s, 3), g = x(s, 2, 1).pow(2);
  CHECK(bracket(RationalFn(a, b), RationalFn(g)) ==
        RationalFn(bracket(a, g) * b - a * bracket(b, g), b * b));
}

TEST_CASE("minors") {
  const Shape s{3, 3};
  CHECK(minor(MinorSpec({1}, {1}), s) == x(s, 1, 1));
  CHECK(minor(MinorSpec({1, 2}, {1, 2}), s) == x(s, 1, 1) * x(s, 2, 2) - x(s, 1, 2) * x(s, 2, 1));
  CHECK(minor(MinorSpec({1, 2, 3}, {1, 2, 3}), s).term_count() == 6);
  CHECK(MinorSpec({1, 2}, {2, 3}).label() == "Δ_{1,2|2,3}");
  CHECK_THROWS(MinorSpec({2, 1}, {1, 2}));
  CHECK_THROWS(MinorSpec({1}, {1, 2}));
  CHECK(all_minors(s, 3).size() == 9 + 9 + 1);
  CHECK(all_minors(Shape{2, 4}, 2).size() == 8 + 6);
  const MinorSpec back = minor_spec_from_json(minor_spec_to_json(MinorSpec({1, 3}, {2, 4})));
  CHECK(back == MinorSpec({1, 3}, {2, 4}));
}

TEST_CASE("closed minor bracket equals the generic bracket exhaustively") {
  for (auto [s, r_max] : {std::pair{Shape{3, 3}, 3}, std::pair{Shape{2, 4}, 2}, std::pair{Shape{3, 4}, 2}}) {
    for (const auto& spec : all_minors(s, r_max)) {
      const Poly m = minor(spec, s);
      for (int k = 1; k <= s.rows; ++k)
        for (int l = 1; l <= s.cols; ++l) CHECK(minor_bracket(k, l, spec, s) == bracket(x(s, k, l), m));
    }
  }
}

TEST_CASE("minor bracket worked example") {
  const Shape s{3, 3};
  // {x31, x12}: sign(1-3) x11 x32 + sign(2-1) x32 x11 = 0
  CHECK(minor_bracket(3, 1, MinorSpec({1}, {2}), s).is_zero());
  CHECK(bracket(x(s, 3, 1), x(s, 1, 2)).is_zero());
}

TEST_CASE("sign form of the minor bracket") {
  CHECK(set_sign({2, 3}, 2) == 0);
  CHECK(set_sign({2, 3}, 1) == 1);
  CHECK(set_sign({2, 3}, 4) == -1);
  CHECK_FALSE(set_sign({1, 3}, 2).has_value());

  const Shape s{3, 3};
  const MinorSpec spec({1, 2}, {1, 2});
  const Poly m = minor(spec, s);
  CHECK(lemma_sign_bracket(1, 2, spec, s)->is_zero());
  CHECK(*lemma_sign_bracket(3, 1, spec, s) == -x(s, 3, 1) * m);
  CHECK_FALSE(lemma_sign_bracket(2, 1, MinorSpec({1, 3}, {2, 3}), s).has_value());
  // sign(I-k) + sign(J-l) = -2 is outside the closed form.
  CHECK_FALSE(lemma_sign_bracket(3, 3, spec, s).has_value());

  for (const auto& sp : all_minors(s, 3))
    for (int k = 1; k <= 3; ++k)
      for (int l = 1; l <= 3; ++l)
        if (auto form = lemma_sign_bracket(k, l, sp, s)) CHECK(*form == minor_bracket(k, l, sp, s));
}

TEST_CASE("Casimirs") {
  for (int n = 1; n <= 4; ++n) {
    const Shape s{n, n};
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 1);
    CHECK(is_casimir(RationalFn(minor(MinorSpec(all, all), s))).is_casimir);
  }
  const Shape s{2, 2};
  CHECK(is_casimir(RationalFn(x(s, 1, 2), x(s, 2, 1))).is_casimir);
  const CasimirCheck no = is_casimir(RationalFn(x(s, 1, 1)));
  CHECK_FALSE(no.is_casimir);
  REQUIRE(no.witness_coord.has_value());
  CHECK(*no.witness_coord == std::pair{1, 2});
  CHECK(*no.witness == RationalFn(-x(s, 1, 1) * x(s, 1, 2)));
}

TEST_CASE("Hamiltonian field") {
  std::mt19937_64 rng(6);
  const Shape s{3, 3};
  const MatrixPoint p = random_point(s, rng);
  const MatrixPoint zero = hamiltonian_field(RationalFn(minor(MinorSpec({1, 2, 3}, {1, 2, 3}), s)), p);
  for (const auto& v : zero.values()) CHECK(std::abs(v) < 1e-14);

  const MatrixPoint f = hamiltonian_field(RationalFn(x(s, 3, 1)), p);
  CHECK(std::abs(f(1, 1) - p(1, 1) * p(3, 1)) < 1e-14);

  // Field against a central difference of the numeric flow at t = 0.
  const RationalFn h = parse_rational("x[1][2]*x[2][3] - x[3][3]^2 + x[2][1]", s);
  const MatrixPoint field = hamiltonian_field(h, p);
  FlowOptions o;
  const double eps = 1e-4;
  const MatrixPoint fwd = numeric_flow_to(h, p, eps, o), back = numeric_flow_to(h, p, -eps, o);
  for (int v = 0; v < s.size(); ++v) {
    const cplx fd = (fwd.values()[v] - back.values()[v]) / (2 * eps);
    CHECK(std::abs(fd - field.values()[v]) < 1e-6 * (1 + std::abs(field.values()[v])));
  }
}

TEST_CASE("numeric bracket agrees with the exact bracket") {
  std::mt19937_64 rng(12);
  const Shape s{3, 3};
  const RationalFn f = parse_rational("x[1][1]*x[2][3] + x[3][2]", s), g = parse_rational("det(1,2;2,3)/x[3][1]", s);
  const MatrixPoint p = random_point(s, rng);
  const CompiledFunction cf(f), cg(g);
  const NumericBracket nb = numeric_bracket(cf.gradient(p.values()), cg.gradient(p.values()), p.values(), s);
  const cplx exact = bracket(f, g).evaluate(p.values());
  CHECK(std::abs(nb.value - exact) < 1e-12 * (1 + std::abs(exact)));
  CHECK(nb.scale >= std::abs(nb.value));
}

TEST_CASE("bivector rank") {
  std::mt19937_64 rng(10);
  CHECK(bivector_rank(MatrixPoint(Shape{3, 3})) == 0);
  for (int trial = 0; trial < 5; ++trial) {
    CHECK(bivector_rank(random_point({2, 2}, rng)) == 2);
    CHECK(bivector_rank(random_point({3, 3}, rng)) == 6);
    CHECK(bivector_rank(random_point({4, 4}, rng)) == 12);
    const int r = bivector_rank(random_point({2, 3}, rng));
    CHECK(r % 2 == 0);
  }
  const Eigen::MatrixXcd b = bivector_matrix(random_point({3, 3}, rng));
  CHECK((b + b.transpose()).cwiseAbs().maxCoeff() < 1e-15);
  const std::string csv = bivector_csv(b);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 9);
}
