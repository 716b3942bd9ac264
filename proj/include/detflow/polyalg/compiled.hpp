#pragma once

#include <complex>
#include <span>
#include <vector>

#include "detflow/polyalg/rational_fn.hpp"

namespace detflow {

/// Floating-point snapshot of a Poly for repeated numeric evaluation.
class CompiledPoly {
 public:
  CompiledPoly() = default;
  explicit CompiledPoly(const Poly& p);

  std::complex<double> operator()(std::span<const std::complex<double>> x) const;
  bool is_zero() const { return terms_.empty(); }

 private:
  struct Term {
    std::complex<double> coeff;
    std::vector<std::pair<int, int>> factors;
  };
  std::vector<Term> terms_;
};

/// Value and analytic gradient of a rational function h = N/D at a point.
/// Gradients come from the exact partial derivatives of N and D.
class CompiledFunction {
 public:
  CompiledFunction() = default;
  explicit CompiledFunction(const RationalFn& h);

  Shape shape() const { return shape_; }
  bool is_polynomial() const { return polynomial_; }

  /// Throws DenominatorVanishes under the scale-aware guard.
  std::complex<double> value(std::span<const std::complex<double>> x) const;
  std::complex<double> denominator(std::span<const std::complex<double>> x) const {
    return den_(x);
  }
  /// Gradient with respect to all m*n coordinates (row-major).
  std::vector<std::complex<double>> gradient(std::span<const std::complex<double>> x) const;

 private:
  Shape shape_;
  bool polynomial_ = true;
  CompiledPoly num_;
  CompiledPoly den_;
  std::vector<int> num_vars_;
  std::vector<CompiledPoly> dnum_;
  std::vector<int> den_vars_;
  std::vector<CompiledPoly> dden_;
};

}  // namespace detflow
