#pragma once

#include <vector>

#include "detflow/poisson/minor.hpp"
#include "detflow/weyl/permutation.hpp"

namespace detflow {

/// Kogan-Zelevinsky family attached to a reduced word j_1 ... j_L of the
/// longest element of S_n:
///   v_k = s_{j_1} ... s_{j_{k-1}},  u_k = w0^{-1} v_k,
///   H_k = Delta_{u_k[1, j_k], v_k[1, j_k]},  k = 1 ... n(n-1)/2.
struct KZSystem {
  enum class Certificate { Exact, Numeric };

  int n = 0;
  ReducedWord word;
  std::vector<MinorSpec> specs;
  std::vector<Poly> hams;
  Certificate certificate = Certificate::Exact;
};

/// Builds the family and certifies pairwise commutativity (exactly for
/// n <= 4, numerically to 1e-10 relative otherwise). Throws NotReducedWord
/// or CommutativityFailure.
KZSystem kz_hamiltonians(int n, const ReducedWord& word);

json kz_to_json(const KZSystem& system);

}  // namespace detflow
