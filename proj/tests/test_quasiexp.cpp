#include <doctest.h>

#include <algorithm>
#include <random>

#include "detflow/quasiexp/putzer.hpp"
#include "detflow/quasiexp/qefun.hpp"
#include "detflow/quasiexp/roots.hpp"
#include "oracles.hpp"

using namespace detflow;

namespace {

const cplx I(0, 1);

double rel(cplx a, cplx b) { return std::abs(a - b) / (1 + std::abs(b)); }

double rel(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a - b).cwiseAbs().maxCoeff() / (1 + b.cwiseAbs().maxCoeff());
}

cplx random_cplx(std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return {u(rng), u(rng)};
}

QEFun random_qe(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nterms(1, 4), deg(0, 3);
  std::vector<QETerm> terms;
  for (int a = nterms(rng); a > 0; --a) {
    QETerm term{random_cplx(rng, 2.0), {}};
    for (int d = deg(rng); d >= 0; --d) term.coeffs.push_back(random_cplx(rng));
    terms.push_back(term);
  }
  return QEFun(terms);
}

cplx naive(const std::vector<QETerm>& terms, cplx t) {
  cplx s = 0;
  for (const auto& term : terms) {
    cplx p = 0, tk = 1;
    for (cplx c : term.coeffs) {
      p += c * tk;
      tk *= t;
    }
    s += p * std::exp(term.alpha * t);
  }
  return s;
}

Eigen::MatrixXcd random_matrix(std::mt19937_64& rng, int r) {
  Eigen::MatrixXcd c(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) c(i, j) = random_cplx(rng);
  return c;
}

}  // namespace

TEST_CASE("products") {
  const cplx a(0.3, -1.2);
  const QEFun one = QEFun::exponential(a) * QEFun::exponential(-a);
  REQUIRE(one.terms().size() == 1);
  CHECK(one.terms()[0].alpha == cplx(0));
  CHECK(one.polynomial_degree() == 0);
  CHECK(rel(one(0.7), 1.0) < 1e-15);

  const QEFun t2 = QEFun::monomial(1) * QEFun::monomial(1);
  REQUIRE(t2.terms().size() == 1);
  CHECK(t2.polynomial_degree() == 2);
  CHECK(t2.terms()[0].coeffs[2] == cplx(1));

  const QEFun base = QEFun::constant(1) + QEFun::exponential(1);
  const QEFun sq = base * base;
  CHECK(sq.exponential_count() == 2);
  std::mt19937_64 rng(1);
  for (int s = 0; s < 10; ++s) {
    const cplx t = random_cplx(rng, 3.0);
    CHECK(rel(sq(t), std::pow(1.0 + std::exp(t), 2)) < 1e-13);
  }
  CHECK(rel((sq - QEFun::constant(1) - QEFun::exponential(1, 2) - QEFun::exponential(2))(0.4), 0.0) < 1e-14);
  CHECK((sq - QEFun::constant(1) - QEFun::exponential(1, 2) - QEFun::exponential(2)).is_zero());
}

TEST_CASE("antiderivatives") {
  const QEFun t = QEFun::constant(1).antiderivative();
  CHECK(t.polynomial_degree() == 1);
  CHECK(rel(t(2.5), 2.5) < 1e-15);

  const cplx a(0.4, 0.9);
  const QEFun e = QEFun::exponential(a).antiderivative();
  std::mt19937_64 rng(2);
  for (int s = 0; s < 10; ++s) {
    const cplx z = random_cplx(rng, 2.0);
    CHECK(rel(e(z), (std::exp(a * z) - 1.0) / a) < 1e-13);
  }

  const QEFun te = (QEFun::monomial(1) * QEFun::exponential(a)).antiderivative();
  for (int s = 0; s < 10; ++s) {
    const cplx z = random_cplx(rng, 2.0);
    const cplx expected = (z / a - 1.0 / (a * a)) * std::exp(a * z) + 1.0 / (a * a);
    CHECK(rel(te(z), expected) < 1e-13);
    // differentiate-back oracle
    CHECK(rel(oracle::derivative([&](cplx u) { return te(u); }, z), z * std::exp(a * z)) < 1e-8);
  }
}

TEST_CASE("derivative and antiderivative are inverse") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const QEFun f = random_qe(rng);
    const QEFun back = f.antiderivative().derivative();
    CHECK((back - f).chopped(1e-12 * (1 + f.max_coeff())).is_zero());
    const QEFun F = f.antiderivative();
    CHECK(std::abs(F(0)) < 1e-13 * (1 + F.max_coeff()));
    const QEFun again = f.derivative().antiderivative();
    const cplx t = random_cplx(rng);
    CHECK(rel(again(t), f(t) - f(0)) < 1e-11);
  }
}

TEST_CASE("simplification keeps evaluation") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<QETerm> raw;
    std::uniform_int_distribution<int> nterms(1, 5), deg(0, 3);
    for (int a = nterms(rng); a > 0; --a) {
      QETerm term{random_cplx(rng, 2.0), {}};
      for (int d = deg(rng); d >= 0; --d) term.coeffs.push_back(random_cplx(rng));
      raw.push_back(term);
    }
    raw.push_back(raw.front());  // forces a merge
    const QEFun f(raw);
    for (int s = 0; s < 3; ++s) {
      const cplx t = random_cplx(rng, 2.0);
      const cplx n = naive(raw, t);
      CHECK(std::abs(f(t) - n) <= 1e-12 * (1 + std::abs(n)) * 10);
    }
    for (std::size_t a = 0; a + 1 < f.terms().size(); ++a)
      CHECK(std::abs(f.terms()[a].alpha - f.terms()[a + 1].alpha) > QEFun::kMergeTolerance);
  }
  // Exponents closer than the merge tolerance collapse.
  const QEFun near = QEFun::exponential(1.0) + QEFun::exponential(1.0 + 1e-11);
  CHECK(near.exponential_count() == 1);
  CHECK(QEFun::exponential(1e-12).polynomial_degree() == 0);
}

TEST_CASE("json round trip") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const QEFun f = random_qe(rng);
    const QEFun g = qe_from_json(qe_to_json(f));
    CHECK((f - g).is_zero());
    CHECK(qe_to_json(g) == qe_to_json(f));
  }
}

TEST_CASE("polynomial roots") {
  auto sorted = [](std::vector<RootCluster> r) {
    std::sort(r.begin(), r.end(), [](const RootCluster& a, const RootCluster& b) {
      return std::make_pair(a.value.real(), a.value.imag()) < std::make_pair(b.value.real(), b.value.imag());
    });
    return r;
  };
  const auto r1 = sorted(poly_roots({1.0, 0.0, 1.0}));
  REQUIRE(r1.size() == 2);
  CHECK(std::abs(r1[0].value + I) < 1e-12);
  CHECK(std::abs(r1[1].value - I) < 1e-12);

  const auto r2 = poly_roots({-1.0, 0.0, 0.0, 1.0});
  REQUIRE(r2.size() == 3);
  for (const auto& c : r2) {
    CHECK(c.multiplicity == 1);
    CHECK(std::abs(std::pow(c.value, 3) - 1.0) < 1e-12);
  }

  // (z-2)^2 (z+1) = z^3 - 3z^2 + 4
  const std::vector<cplx> p = {4.0, 0.0, -3.0, 1.0};
  const auto r3 = sorted(poly_roots(p));
  REQUIRE(r3.size() == 2);
  CHECK(r3[0].multiplicity == 1);
  CHECK(std::abs(r3[0].value + 1.0) < 1e-12);
  CHECK(r3[1].multiplicity == 2);
  CHECK(std::abs(r3[1].value - 2.0) < 1e-7);
  for (const auto& c : r3) CHECK(backward_error(p, c.value) < 1e-11);
  CHECK(std::abs(poly_derivative_at(p, 1, 2.0)) < 1e-14);

  // exact zeros split off
  const auto r4 = sorted(poly_roots({0.0, 0.0, -1.0, 1.0}));
  REQUIRE(r4.size() == 2);
  CHECK(r4[0].value == cplx(0));
  CHECK(r4[0].multiplicity == 2);
}

TEST_CASE("random polynomials: residual and multiplicity sum") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    const int deg = 1 + trial % 6;
    std::vector<cplx> c(deg + 1);
    for (auto& v : c) v = random_cplx(rng);
    if (std::abs(c.back()) < 0.1) c.back() = 1.0;
    const auto roots = poly_roots(c);
    int total = 0;
    for (const auto& r : roots) {
      total += r.multiplicity;
      CHECK(backward_error(c, r.value) < 1e-11);
    }
    CHECK(total == deg);
  }
}

TEST_CASE("putzer examples") {
  const QEMatrix zero = putzer_exp(Eigen::MatrixXcd::Zero(3, 3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == j) {
        REQUIRE(zero[i][j].terms().size() == 1);
        CHECK(zero[i][j].polynomial_degree() == 0);
        CHECK(rel(zero[i][j](1.3), 1.0) < 1e-15);
      } else {
        CHECK(zero[i][j].is_zero());
      }
    }

  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(2, 2);
  const cplx a(0.5, 0.2), b(-1.0, 0.7);
  d(0, 0) = a;
  d(1, 1) = b;
  const QEMatrix diag = putzer_exp(d);
  CHECK(diag[0][1].chopped(1e-12).is_zero());
  CHECK(diag[1][0].chopped(1e-12).is_zero());
  CHECK(diag[0][0].chopped(1e-12).exponential_count() == 1);
  for (cplx t : {cplx(0.3), cplx(-1, 2)}) {
    CHECK(rel(diag[0][0](t), std::exp(a * t)) < 1e-12);
    CHECK(rel(diag[1][1](t), std::exp(b * t)) < 1e-12);
  }

  const cplx lambda(0.3, -0.4);
  Eigen::MatrixXcd jordan(2, 2);
  jordan << lambda, 1.0, 0.0, lambda;
  const QEMatrix j = putzer_exp(jordan);
  CHECK(j[1][0].is_zero());
  CHECK(j[0][1].max_exponential_degree() == 1);
  for (cplx t : {cplx(0.1), cplx(0.25, 0.1), cplx(-0.4)}) {
    CHECK(rel(evaluate(j, t), oracle::matrix_exp_series(jordan, t)) < 1e-12);
    CHECK(rel(j[0][1](t), t * std::exp(lambda * t)) < 1e-12);
  }
}

TEST_CASE("putzer: group law, ODE and series oracle") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const int r = 1 + trial % 4;
    Eigen::MatrixXcd c = random_matrix(rng, r);
    if (trial % 5 == 4 && r >= 2) {
      // defective: nilpotent part on a repeated eigenvalue
      c = Eigen::MatrixXcd::Identity(r, r) * random_cplx(rng);
      c(0, 1) = 1.0;
    }
    const QEMatrix e = putzer_exp(c);
    for (int k = 0; k < 10; ++k) {
      const cplx t = random_cplx(rng), s = random_cplx(rng);
      CHECK(rel(evaluate(e, t) * evaluate(e, s), evaluate(e, t + s)) < 1e-9);
      Eigen::MatrixXcd de(r, r);
      for (int i = 0; i < r; ++i)
        for (int jj = 0; jj < r; ++jj) de(i, jj) = e[i][jj].derivative()(t);
      CHECK(rel(de, c * evaluate(e, t)) < 1e-9);
    }
    CHECK(rel(evaluate(e, 0.2), oracle::matrix_exp_series(c, 0.2)) < 1e-10);
    CHECK(rel(evaluate(e, 0.0), Eigen::MatrixXcd::Identity(r, r)) < 1e-12);
  }
}

TEST_CASE("characteristic polynomial") {
  Eigen::MatrixXcd c(2, 2);
  c << 1.0, 2.0, 3.0, 4.0;
  const auto p = characteristic_polynomial(c);
  REQUIRE(p.size() == 3);
  CHECK(rel(p[0], -2.0) < 1e-14);
  CHECK(rel(p[1], -5.0) < 1e-14);
  CHECK(p[2] == cplx(1));
  const auto ev = clustered_eigenvalues(Eigen::MatrixXcd::Identity(3, 3) * 2.0);
  REQUIRE(ev.size() == 3);
  for (cplx v : ev) CHECK(std::abs(v - 2.0) < 1e-6);
}
