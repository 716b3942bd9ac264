#include "detflow/polyalg/rational_fn.hpp"

#include <algorithm>
#include <set>

#include "detflow/errors.hpp"

namespace detflow {

RationalFn::RationalFn(Poly num) : num_(std::move(num)), den_(Poly::constant(num_.shape(), 1)) {}

RationalFn::RationalFn(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (num_.shape() != den_.shape()) throw ShapeMismatch("rational function: shape mismatch");
  if (den_.is_zero()) throw Error("rational function with zero denominator");
  normalize();
}

void RationalFn::normalize() {
  if (num_.is_zero()) {
    den_ = Poly::constant(num_.shape(), 1);
    return;
  }
  GaussRat lead = den_.leading_coefficient();
  if (!lead.is_one()) {
    GaussRat inv = lead.inverse();
    num_ *= inv;
    den_ *= inv;
  }
}

const Poly& RationalFn::as_poly() const {
  if (!is_polynomial()) throw Error("rational function is not a polynomial");
  return num_;
}

RationalFn operator+(const RationalFn& a, const RationalFn& b) {
  if (a.den_ == b.den_) return {a.num_ + b.num_, a.den_};
  return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
}

RationalFn operator-(const RationalFn& a, const RationalFn& b) { return a + (-b); }

RationalFn operator*(const RationalFn& a, const RationalFn& b) {
  return {a.num_ * b.num_, a.den_ * b.den_};
}

RationalFn operator/(const RationalFn& a, const RationalFn& b) {
  if (b.num_.is_zero()) throw Error("division by the zero polynomial");
  return {a.num_ * b.den_, a.den_ * b.num_};
}

bool operator==(const RationalFn& a, const RationalFn& b) {
  if (a.shape() != b.shape()) return false;
  if (a.den_ == b.den_) return a.num_ == b.num_;
  return a.num_ * b.den_ == b.num_ * a.den_;
}

RationalFn RationalFn::pow(int exponent) const {
  if (exponent >= 0) return {num_.pow(exponent), den_.pow(exponent)};
  if (num_.is_zero()) throw Error("negative power of zero");
  return {den_.pow(-exponent), num_.pow(-exponent)};
}

RationalFn RationalFn::diff_var(int var) const {
  if (is_polynomial()) return RationalFn(num_.diff_var(var));
  Poly dn = num_.diff_var(var);
  Poly dd = den_.diff_var(var);
  if (dd.is_zero()) return {dn, den_};
  return {dn * den_ - num_ * dd, den_ * den_};
}

std::vector<int> RationalFn::variables() const {
  auto a = num_.variables();
  auto b = den_.variables();
  std::set<int> all(a.begin(), a.end());
  all.insert(b.begin(), b.end());
  return {all.begin(), all.end()};
}

std::complex<double> RationalFn::evaluate(std::span<const std::complex<double>> values) const {
  std::complex<double> n = num_.evaluate(values);
  if (is_polynomial()) return n;
  std::complex<double> d = den_.evaluate(values);
  if (std::abs(d) < kSingularTolerance * (1.0 + std::abs(n)))
    throw DenominatorVanishes("denominator " + den_.render() + " vanishes at the point");
  return n / d;
}

GaussRat RationalFn::evaluate_exact(std::span<const GaussRat> values) const {
  GaussRat d = den_.evaluate_exact(values);
  if (d.is_zero()) throw DenominatorVanishes("denominator " + den_.render() + " is exactly zero");
  return num_.evaluate_exact(values) / d;
}

RationalFn RationalFn::compose(Shape target, std::span<const Poly> images) const {
  return {num_.compose(target, images), den_.compose(target, images)};
}

std::string RationalFn::render() const {
  if (is_polynomial()) return num_.render();
  return "(" + num_.render() + ")/(" + den_.render() + ")";
}

}  // namespace detflow
