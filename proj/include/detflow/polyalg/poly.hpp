#pragma once

#include <compare>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "detflow/polyalg/gauss_rat.hpp"

namespace detflow {

/// Ambient shape (m, n) of M_{m,n}. Coordinates x_{ij} are 1-based in the
/// public API and map to the row-major variable index (i-1)*n + (j-1).
struct Shape {
  int rows = 0;
  int cols = 0;

  int size() const { return rows * cols; }
  bool contains(int i, int j) const { return i >= 1 && i <= rows && j >= 1 && j <= cols; }
  int var(int i, int j) const;  // throws IndexOutOfRange
  int row_of(int var) const { return var / cols + 1; }
  int col_of(int var) const { return var % cols + 1; }
  std::string to_string() const { return std::to_string(rows) + "x" + std::to_string(cols); }

  friend bool operator==(const Shape&, const Shape&) = default;
};

/// Product of coordinate powers, stored sparsely as (variable, exponent) pairs
/// sorted by variable with no zero exponents.
class Monomial {
 public:
  using Factor = std::pair<std::uint16_t, std::uint16_t>;

  Monomial() = default;
  static Monomial variable(int var, int exponent = 1);

  std::span<const Factor> factors() const { return factors_; }
  int degree() const { return degree_; }
  int exponent(int var) const;
  bool is_one() const { return factors_.empty(); }

  Monomial operator*(const Monomial& o) const;
  /// Removes one power of `var`; caller checks exponent(var) > 0.
  Monomial lowered(int var) const;
  Monomial without(int var) const;

  /// Graded lexicographic order over row-major coordinates.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.factors_ == b.factors_;
  }

 private:
  std::vector<Factor> factors_;
  int degree_ = 0;
};

/// Exact polynomial in the coordinates of M_{m,n} with Gaussian rational
/// coefficients. Zero coefficients are never stored, so structural equality
/// is mathematical equality.
class Poly {
 public:
  using Terms = std::map<Monomial, GaussRat, std::greater<>>;

  Poly() = default;
  explicit Poly(Shape shape) : shape_(shape) {}
  static Poly constant(Shape shape, const GaussRat& c);
  static Poly variable(Shape shape, int i, int j);
  static Poly from_var(Shape shape, int var);
  static Poly monomial(Shape shape, const Monomial& m, const GaussRat& c);

  Shape shape() const { return shape_; }
  const Terms& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  GaussRat constant_value() const;  // coefficient of the unit monomial
  int total_degree() const;
  int degree_in(int var) const;
  /// Sorted distinct variables that occur.
  std::vector<int> variables() const;
  bool depends_on(int var) const;
  const GaussRat& leading_coefficient() const;

  void add_term(const Monomial& m, const GaussRat& c);

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const GaussRat& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const GaussRat& c) { return a *= c; }
  friend Poly operator*(const GaussRat& c, Poly a) { return a *= c; }
  friend bool operator==(const Poly& a, const Poly& b) {
    return a.shape_ == b.shape_ && a.terms_ == b.terms_;
  }

  Poly pow(int exponent) const;
  Poly differentiate(int i, int j) const;
  Poly diff_var(int var) const;
  /// Substitutes x_var = 0.
  Poly drop_var(int var) const;

  std::complex<double> evaluate(std::span<const std::complex<double>> values) const;
  GaussRat evaluate_exact(std::span<const GaussRat> values) const;

  /// Evaluates in an arbitrary commutative ring R: `var_value(v)` gives the
  /// image of each coordinate, `lift(c)` the image of a coefficient.
  template <class R, class VarFn, class LiftFn>
  R evaluate_in(VarFn&& var_value, LiftFn&& lift, R zero) const;

  /// Pullback along a polynomial map: x_v -> images[v]; all images share the
  /// target shape.
  Poly compose(Shape target, std::span<const Poly> images) const;

  std::string render() const;

 private:
  void check_same_shape(const Poly& o) const;

  Shape shape_;
  Terms terms_;
};

template <class R, class VarFn, class LiftFn>
R Poly::evaluate_in(VarFn&& var_value, LiftFn&& lift, R zero) const {
  std::map<int, std::vector<R>> powers;
  auto power = [&](int var, int e) -> const R& {
    auto& list = powers[var];
    if (list.empty()) list.push_back(var_value(var));
    while (static_cast<int>(list.size()) < e) list.push_back(list.back() * list.front());
    return list[e - 1];
  };
  R total = zero;
  for (const auto& [mono, coeff] : terms_) {
    R term = lift(coeff);
    for (const auto& [var, e] : mono.factors()) term = term * power(var, e);
    total = total + term;
  }
  return total;
}

}  // namespace detflow
