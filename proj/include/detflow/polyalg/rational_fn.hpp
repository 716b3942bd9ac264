#pragma once

#include <complex>
#include <span>
#include <string>
#include <variant>

#include "detflow/polyalg/poly.hpp"

namespace detflow {

/// Quotient num/den of polynomials. Not reduced beyond making the
/// denominator monic (and folding constant denominators into num), so
/// equality is decided by cross-multiplication.
class RationalFn {
 public:
  RationalFn() = default;
  RationalFn(Poly num);  // NOLINT(google-explicit-constructor)
  RationalFn(Poly num, Poly den);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  Shape shape() const { return num_.shape(); }

  bool is_polynomial() const { return den_.is_constant(); }
  /// The numerator when the denominator is 1; throws otherwise.
  const Poly& as_poly() const;
  bool is_zero() const { return num_.is_zero(); }

  RationalFn operator-() const { return {-num_, den_}; }
  friend RationalFn operator+(const RationalFn& a, const RationalFn& b);
  friend RationalFn operator-(const RationalFn& a, const RationalFn& b);
  friend RationalFn operator*(const RationalFn& a, const RationalFn& b);
  friend RationalFn operator/(const RationalFn& a, const RationalFn& b);
  friend bool operator==(const RationalFn& a, const RationalFn& b);
  /// Representation equality (no cross-multiplication).
  bool structurally_equal(const RationalFn& o) const { return num_ == o.num_ && den_ == o.den_; }

  RationalFn pow(int exponent) const;
  RationalFn diff_var(int var) const;
  RationalFn differentiate(int i, int j) const { return diff_var(shape().var(i, j)); }
  std::vector<int> variables() const;

  /// Throws DenominatorVanishes when |den(X)| < 1e-12 (1 + |num(X)|).
  std::complex<double> evaluate(std::span<const std::complex<double>> values) const;
  /// Throws DenominatorVanishes when den(X) is exactly zero.
  GaussRat evaluate_exact(std::span<const GaussRat> values) const;

  RationalFn compose(Shape target, std::span<const Poly> images) const;

  std::string render() const;

 private:
  void normalize();

  Poly num_;
  Poly den_;
};

inline constexpr double kSingularTolerance = 1e-12;

/// Either form produced by the expression parser.
using Expression = std::variant<Poly, RationalFn>;

inline RationalFn to_rational(const Expression& e) {
  return std::visit([](const auto& v) { return RationalFn(v); }, e);
}

}  // namespace detflow
