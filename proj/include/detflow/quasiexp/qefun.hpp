#pragma once

#include <complex>
#include <vector>

#include <json.hpp>

namespace detflow {

using cplx = std::complex<double>;

/// p(t) e^{alpha t}, p given by ascending coefficients.
struct QETerm {
  cplx alpha;
  std::vector<cplx> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

/// Quasi-exponential function sum_a p_a(t) e^{alpha_a t}.
///
/// Kept simplified: exponents within 1e-9 of each other are merged (and
/// |alpha| < 1e-9 is snapped to 0), coefficients below 1e-13 of the largest
/// coefficient are dropped, terms are sorted by exponent.
class QEFun {
 public:
  static constexpr double kMergeTolerance = 1e-9;
  static constexpr double kDropTolerance = 1e-13;

  QEFun() = default;
  explicit QEFun(std::vector<QETerm> terms);

  static QEFun constant(cplx c);
  static QEFun exponential(cplx alpha, cplx c = 1.0);
  /// c t^degree
  static QEFun monomial(int degree, cplx c = 1.0);

  const std::vector<QETerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  cplx operator()(cplx t) const;
  QEFun derivative() const;
  /// F with F' = f and F(0) = 0.
  QEFun antiderivative() const;

  QEFun operator-() const;
  QEFun& operator+=(const QEFun& o);
  QEFun& operator-=(const QEFun& o);
  QEFun& operator*=(cplx c);
  friend QEFun operator+(QEFun a, const QEFun& b) { return a += b; }
  friend QEFun operator-(QEFun a, const QEFun& b) { return a -= b; }
  friend QEFun operator*(const QEFun& a, const QEFun& b);
  friend QEFun operator*(QEFun a, cplx c) { return a *= c; }
  friend QEFun operator*(cplx c, QEFun a) { return a *= c; }

  /// Multiplies by e^{beta t}.
  QEFun shifted_exponent(cplx beta) const;

  /// Drops coefficients with magnitude below abs_tol.
  QEFun chopped(double abs_tol) const;
  double max_coeff() const;

  /// Degree of the exponent-0 part, -1 if absent.
  int polynomial_degree() const;
  /// Largest coefficient degree among terms with nonzero exponent, -1 if none.
  int max_exponential_degree() const;
  int exponential_count() const;

 private:
  void simplify();

  std::vector<QETerm> terms_;
};

/// [{"alpha": [re, im], "poly": [[re, im], ...]}, ...]
nlohmann::json qe_to_json(const QEFun& f);
QEFun qe_from_json(const nlohmann::json& j);

}  // namespace detflow
