#pragma once

#include <vector>

#include <Eigen/Dense>

#include "detflow/quasiexp/qefun.hpp"
#include "detflow/quasiexp/roots.hpp"

namespace detflow {

using QEMatrix = std::vector<std::vector<QEFun>>;

/// Ascending coefficients of det(z I - C), monic (Faddeev-LeVerrier).
std::vector<cplx> characteristic_polynomial(const Eigen::MatrixXcd& c);

/// Eigenvalues with multiplicity, equal values adjacent.
std::vector<cplx> clustered_eigenvalues(const Eigen::MatrixXcd& c);

/// exp(t C) entrywise as quasi-exponentials.
QEMatrix putzer_exp(const Eigen::MatrixXcd& c);

Eigen::MatrixXcd evaluate(const QEMatrix& m, cplx t);

}  // namespace detflow
