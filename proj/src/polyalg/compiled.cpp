#include "detflow/polyalg/compiled.hpp"

#include "detflow/errors.hpp"

namespace detflow {

CompiledPoly::CompiledPoly(const Poly& p) {
  terms_.reserve(p.term_count());
  for (const auto& [m, c] : p.terms()) {
    Term t{c.to_complex(), {}};
    for (const auto& [v, e] : m.factors()) t.factors.emplace_back(v, e);
    terms_.push_back(std::move(t));
  }
}

std::complex<double> CompiledPoly::operator()(std::span<const std::complex<double>> x) const {
  std::complex<double> total = 0;
  for (const auto& t : terms_) {
    std::complex<double> term = t.coeff;
    for (const auto& [v, e] : t.factors)
      for (int k = 0; k < e; ++k) term *= x[v];
    total += term;
  }
  return total;
}

CompiledFunction::CompiledFunction(const RationalFn& h)
    : shape_(h.shape()), polynomial_(h.is_polynomial()), num_(h.num()), den_(h.den()) {
  for (int v : h.num().variables()) {
    num_vars_.push_back(v);
    dnum_.emplace_back(h.num().diff_var(v));
  }
  if (!polynomial_) {
    for (int v : h.den().variables()) {
      den_vars_.push_back(v);
      dden_.emplace_back(h.den().diff_var(v));
    }
  }
}

std::complex<double> CompiledFunction::value(std::span<const std::complex<double>> x) const {
  std::complex<double> n = num_(x);
  if (polynomial_) return n * den_(x);
  std::complex<double> d = den_(x);
  if (std::abs(d) < kSingularTolerance * (1.0 + std::abs(n)))
    throw DenominatorVanishes("denominator vanishes at the point");
  return n / d;
}

std::vector<std::complex<double>> CompiledFunction::gradient(
    std::span<const std::complex<double>> x) const {
  std::vector<std::complex<double>> grad(shape_.size());
  if (polynomial_) {
    std::complex<double> scale = den_(x);
    for (std::size_t k = 0; k < num_vars_.size(); ++k) grad[num_vars_[k]] = scale * dnum_[k](x);
    return grad;
  }
  std::complex<double> n = num_(x);
  std::complex<double> d = den_(x);
  if (std::abs(d) < kSingularTolerance * (1.0 + std::abs(n)))
    throw DenominatorVanishes("denominator vanishes at the point");
  for (std::size_t k = 0; k < num_vars_.size(); ++k) grad[num_vars_[k]] += dnum_[k](x) / d;
  std::complex<double> q = n / (d * d);
  for (std::size_t k = 0; k < den_vars_.size(); ++k) grad[den_vars_[k]] -= q * dden_[k](x);
  return grad;
}

}  // namespace detflow
