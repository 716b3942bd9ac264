#pragma once

#include <Eigen/Dense>

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "detflow/polyalg/compiled.hpp"
#include "detflow/polyalg/matrix_point.hpp"

namespace detflow {

/// (mn) x (mn) matrix of generator brackets {x_a, x_b}(X), row-major
/// coordinate order.
Eigen::MatrixXcd bivector_matrix(const MatrixPoint& x);

/// CSV rows of the bivector matrix, real and imaginary parts as "re+imj".
std::string bivector_csv(const Eigen::MatrixXcd& b);

/// Number of singular values above rel_tol * sigma_max.
int numeric_rank(const Eigen::MatrixXcd& m, double rel_tol = 1e-9);

int bivector_rank(const MatrixPoint& x);

/// Xdot_kl = sum_ij {x_kl, x_ij}(X) dh/dx_ij(X), row-major.
std::vector<cplx> hamiltonian_field(const CompiledFunction& h, std::span<const cplx> x);
MatrixPoint hamiltonian_field(const RationalFn& h, const MatrixPoint& x);

/// Contracts the bivector with two gradients: grad_f^T B(X) grad_g.
/// `scale` is the sum of absolute values of the individual contributions,
/// a cancellation-aware yardstick for |value|.
struct NumericBracket {
  cplx value;
  double scale = 0;
  double relative() const { return scale > 0 ? std::abs(value) / scale : std::abs(value); }
};
NumericBracket numeric_bracket(std::span<const cplx> grad_f, std::span<const cplx> grad_g,
                               std::span<const cplx> x, Shape shape);

}  // namespace detflow
