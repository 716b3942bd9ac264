#pragma once

// Independent reference implementations used only by the tests. None of
// these route through the library code they are compared against.

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "detflow/polyalg/poly.hpp"
#include "detflow/polyalg/matrix_point.hpp"

namespace oracle {

using cplx = std::complex<double>;
using detflow::GaussRat;
using detflow::Poly;
using detflow::Shape;

inline int sign(int v) { return (v > 0) - (v < 0); }

/// Leibniz sum over permutations of the column list.
inline Poly leibniz_det(Shape shape, const std::vector<int>& rows, const std::vector<int>& cols) {
  std::vector<int> perm(cols.size());
  std::iota(perm.begin(), perm.end(), 0);
  Poly total(shape);
  do {
    int inversions = 0;
    for (std::size_t a = 0; a < perm.size(); ++a)
      for (std::size_t b = a + 1; b < perm.size(); ++b) inversions += perm[a] > perm[b];
    Poly term = Poly::constant(shape, GaussRat(inversions % 2 ? -1 : 1));
    for (std::size_t a = 0; a < perm.size(); ++a) term = term * Poly::variable(shape, rows[a], cols[perm[a]]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// Numeric determinant of the submatrix by Gaussian elimination.
inline cplx numeric_det(const detflow::MatrixPoint& x, const std::vector<int>& rows, const std::vector<int>& cols) {
  const auto r = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXcd m(r, r);
  for (Eigen::Index a = 0; a < r; ++a)
    for (Eigen::Index b = 0; b < r; ++b) m(a, b) = x(rows[a], cols[b]);
  return m.determinant();
}

/// {f, g} from the definition: double sum over generator pairs with the
/// structure constants written out by hand.
inline Poly bracket_by_definition(const Poly& f, const Poly& g) {
  const Shape s = f.shape();
  Poly total(s);
  for (int k = 1; k <= s.rows; ++k)
    for (int l = 1; l <= s.cols; ++l) {
      const Poly df = f.differentiate(k, l);
      if (df.is_zero()) continue;
      for (int i = 1; i <= s.rows; ++i)
        for (int j = 1; j <= s.cols; ++j) {
          const int c = sign(i - k) + sign(j - l);
          if (c == 0) continue;
          const Poly dg = g.differentiate(i, j);
          if (dg.is_zero()) continue;
          total += Poly::constant(s, GaussRat(c)) * Poly::variable(s, i, l) * Poly::variable(s, k, j) * df * dg;
        }
    }
  return total;
}

/// All words of the given length over {1..n-1} whose product is i -> n+1-i
/// and whose length equals the inversion count, by brute force.
inline std::vector<std::vector<int>> brute_force_reduced_words(int n) {
  const int length = n * (n - 1) / 2;
  std::vector<std::vector<int>> out;
  std::vector<int> word(length, 1);
  for (;;) {
    // Apply s_{j_1} ... s_{j_L} to the identity as position swaps on the right.
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 1);
    for (int j : word) std::swap(perm[j - 1], perm[j]);
    bool longest = true;
    for (int i = 0; i < n; ++i) longest = longest && perm[i] == n - i;
    if (longest) out.push_back(word);
    int pos = length - 1;
    while (pos >= 0 && word[pos] == n - 1) word[pos--] = 1;
    if (pos < 0) break;
    ++word[pos];
  }
  return out;
}

/// exp(tC) by scaling and squaring of a truncated Taylor series.
inline Eigen::MatrixXcd matrix_exp_series(const Eigen::MatrixXcd& c, cplx t) {
  Eigen::MatrixXcd a = c * t;
  int squarings = 0;
  while (a.cwiseAbs().maxCoeff() > 0.5) {
    a /= 2.0;
    ++squarings;
  }
  Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(c.rows(), c.cols());
  Eigen::MatrixXcd sum = term;
  for (int k = 1; k < 30; ++k) {
    term = term * a / static_cast<double>(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

/// Central finite-difference derivative of a complex function of a complex
/// variable along the real axis.
inline cplx derivative(const std::function<cplx(cplx)>& f, cplx z, double h = 1e-5) {
  return (f(z + h) - f(z - h)) / (2 * h);
}

/// Random polynomial with small Gaussian-integer coefficients.
inline Poly random_poly(Shape shape, std::mt19937_64& rng, int max_terms = 4, int max_degree = 3) {
  std::uniform_int_distribution<int> var(1, shape.size()), deg(0, max_degree), coeff(-5, 5),
      terms(1, max_terms);
  Poly p(shape);
  for (int t = terms(rng); t > 0; --t) {
    Poly m = Poly::constant(shape, GaussRat(mpq_class(coeff(rng)), mpq_class(coeff(rng))));
    for (int d = deg(rng); d > 0; --d) {
      const int v = var(rng) - 1;
      m = m * Poly::from_var(shape, v);
    }
    p += m;
  }
  return p;
}

/// Random exact point with entries (a + bi)/q.
inline std::vector<GaussRat> random_exact_values(Shape shape, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
  std::vector<GaussRat> out;
  for (int v = 0; v < shape.size(); ++v) {
    const int q = den(rng);
    out.emplace_back(mpq_class(num(rng), q), mpq_class(num(rng), q));
  }
  return out;
}

}  // namespace oracle
