#pragma once

#include <complex>
#include <vector>

namespace detflow {

using cplx = std::complex<double>;

struct RootCluster {
  cplx value;
  int multiplicity = 1;
};

/// Roots of sum_k coeffs[k] z^k with multiplicities.
///
/// Exact zero roots are split off first. The rest come from Aberth
/// iteration; approximations are then merged agglomeratively while the
/// merged mean passes a multiple-root test on the derivatives. Throws
/// NoConvergence if some root has backward error above 1e-11.
std::vector<RootCluster> poly_roots(const std::vector<cplx>& coeffs);

/// Backward error |p(z)| / sum |c_k| |z|^k.
double backward_error(const std::vector<cplx>& coeffs, cplx z);

/// j-th derivative of the polynomial at z.
cplx poly_derivative_at(const std::vector<cplx>& coeffs, int j, cplx z);

}  // namespace detflow
