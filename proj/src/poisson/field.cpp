#include "detflow/poisson/field.hpp"

#include <sstream>

#include "detflow/errors.hpp"
#include "detflow/poisson/bracket.hpp"

namespace detflow {

Eigen::MatrixXcd bivector_matrix(const MatrixPoint& x) {
  Shape s = x.shape();
  int d = s.size();
  Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(d, d);
  for (int a = 0; a < d; ++a) {
    int k = s.row_of(a), l = s.col_of(a);
    for (int c = 0; c < d; ++c) {
      int i = s.row_of(c), j = s.col_of(c);
      int coeff = generator_coefficient(k, l, i, j);
      if (coeff != 0) b(a, c) = static_cast<double>(coeff) * x(i, l) * x(k, j);
    }
  }
  return b;
}

std::string bivector_csv(const Eigen::MatrixXcd& b) {
  std::ostringstream out;
  out.precision(17);
  for (Eigen::Index r = 0; r < b.rows(); ++r) {
    for (Eigen::Index c = 0; c < b.cols(); ++c) {
      if (c) out << ',';
      const cplx v = b(r, c);
      out << v.real() << (v.imag() < 0 ? "" : "+") << v.imag() << 'j';
    }
    out << '\n';
  }
  return out.str();
}

int numeric_rank(const Eigen::MatrixXcd& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (sv(k) > rel_tol * sv(0)) ++rank;
  return rank;
}

int bivector_rank(const MatrixPoint& x) { return numeric_rank(bivector_matrix(x)); }

std::vector<cplx> hamiltonian_field(const CompiledFunction& h, std::span<const cplx> x) {
  Shape s = h.shape();
  std::vector<cplx> grad = h.gradient(x);
  std::vector<cplx> out(s.size());
  for (int a = 0; a < s.size(); ++a) {
    int k = s.row_of(a), l = s.col_of(a);
    cplx acc = 0;
    for (int c = 0; c < s.size(); ++c) {
      if (grad[c] == cplx(0)) continue;
      int i = s.row_of(c), j = s.col_of(c);
      int coeff = generator_coefficient(k, l, i, j);
      if (coeff == 0) continue;
      acc += static_cast<double>(coeff) * x[(i - 1) * s.cols + (l - 1)] *
             x[(k - 1) * s.cols + (j - 1)] * grad[c];
    }
    out[a] = acc;
  }
  return out;
}

MatrixPoint hamiltonian_field(const RationalFn& h, const MatrixPoint& x) {
  if (h.shape() != x.shape()) throw ShapeMismatch("hamiltonian_field: shape mismatch");
  CompiledFunction compiled(h);
  return {x.shape(), hamiltonian_field(compiled, x.values())};
}

NumericBracket numeric_bracket(std::span<const cplx> grad_f, std::span<const cplx> grad_g,
                               std::span<const cplx> x, Shape s) {
  NumericBracket out{0, 0};
  for (int a = 0; a < s.size(); ++a) {
    if (grad_f[a] == cplx(0)) continue;
    int k = s.row_of(a), l = s.col_of(a);
    for (int c = 0; c < s.size(); ++c) {
      if (grad_g[c] == cplx(0)) continue;
      int i = s.row_of(c), j = s.col_of(c);
      int coeff = generator_coefficient(k, l, i, j);
      if (coeff == 0) continue;
      cplx term = static_cast<double>(coeff) * x[(i - 1) * s.cols + (l - 1)] *
                  x[(k - 1) * s.cols + (j - 1)] * grad_f[a] * grad_g[c];
      out.value += term;
      out.scale += std::abs(term);
    }
  }
  return out;
}

}  // namespace detflow
