#include "detflow/quasiexp/putzer.hpp"

#include <algorithm>

namespace detflow {

std::vector<cplx> characteristic_polynomial(const Eigen::MatrixXcd& c) {
  const auto r = c.rows();
  std::vector<cplx> coeffs(r + 1, 0.0);
  coeffs[r] = 1.0;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(r, r);
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(r, r);
  for (Eigen::Index k = 1; k <= r; ++k) {
    m = c * m + coeffs[r - k + 1] * id;
    coeffs[r - k] = -(c * m).trace() / static_cast<double>(k);
  }
  return coeffs;
}

std::vector<cplx> clustered_eigenvalues(const Eigen::MatrixXcd& c) {
  std::vector<cplx> out;
  if (c.rows() == 0) return out;
  for (const auto& cl : poly_roots(characteristic_polynomial(c)))
    for (int k = 0; k < cl.multiplicity; ++k) out.push_back(cl.value);
  return out;
}

QEMatrix putzer_exp(const Eigen::MatrixXcd& c) {
  const auto r = c.rows();
  QEMatrix out(r, std::vector<QEFun>(r));
  if (r == 0) return out;
  const auto lambda = clustered_eigenvalues(c);
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(r, r);

  Eigen::MatrixXcd p = id;
  QEFun rk = QEFun::exponential(lambda[0]);
  for (Eigen::Index k = 0; k < r; ++k) {
    if (k > 0) {
      p = (c - lambda[k - 1] * id) * p;
      // r_{k+1} = e^{l t} int_0^t e^{-l s} r_k(s) ds
      rk = rk.shifted_exponent(-lambda[k]).antiderivative().shifted_exponent(lambda[k]);
    }
    for (Eigen::Index a = 0; a < r; ++a)
      for (Eigen::Index b = 0; b < r; ++b)
        if (p(a, b) != cplx(0.0)) out[a][b] += rk * p(a, b);
  }

  double scale = 0;
  for (const auto& row : out)
    for (const auto& f : row) scale = std::max(scale, f.max_coeff());
  for (auto& row : out)
    for (auto& f : row) f = f.chopped(QEFun::kDropTolerance * scale);
  return out;
}

Eigen::MatrixXcd evaluate(const QEMatrix& m, cplx t) {
  const auto r = static_cast<Eigen::Index>(m.size());
  Eigen::MatrixXcd out(r, r);
  for (Eigen::Index a = 0; a < r; ++a)
    for (Eigen::Index b = 0; b < r; ++b) out(a, b) = m[a][b](t);
  return out;
}

}  // namespace detflow
