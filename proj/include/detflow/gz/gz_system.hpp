#pragma once

#include <optional>
#include <string>
#include <vector>

#include "detflow/gz/submatrix_map.hpp"
#include "detflow/polyalg/compiled.hpp"
#include "detflow/polyalg/json_io.hpp"

namespace detflow {

/// Delta_{l;k} = Delta_{[1,k],[l-k+1,l]}: upper-right k x k corner of the
/// leading l x l block.
Poly delta_upper(Shape shape, int l, int k);
/// Delta'_{l;k} = Delta_{[l-k+1,l],[1,k]}: lower-left corner of that block.
Poly delta_lower(Shape shape, int l, int k);
/// Delta_l, the leading principal l x l minor.
Poly delta_leading(Shape shape, int l);

/// Generators of the Poisson center of C(M_n):
///   Delta_{n;1}/Delta'_{n;n-1}, ..., Delta_{n;n-1}/Delta'_{n;1}, Delta_n.
std::vector<RationalFn> center_generators(int n);

/// Member of the default Gelfand-Zeitlin family on M_n: the ratio
/// Delta_{l;k}/Delta'_{l;l-k} for k < l, or Delta_l for k == l.
struct GZIndex {
  int l = 1;
  int k = 1;
  bool is_determinant() const { return k == l; }
  std::string label() const;
  friend bool operator==(const GZIndex&, const GZIndex&) = default;
};

RationalFn gz_hamiltonian(int n, GZIndex index);
/// All n(n+1)/2 indices, level by level: (l,1) ... (l,l-1), (l,l).
std::vector<GZIndex> gz_indices(int n);

/// One step of a projection chain M_k -> M_{k-1}: the row and column (1-based
/// positions within the current k x k matrix) that are dropped.
struct ChainStep {
  int drop_row = 0;
  int drop_col = 0;
  friend bool operator==(const ChainStep&, const ChainStep&) = default;
};

json chain_to_json(const std::vector<ChainStep>& chain);
std::vector<ChainStep> chain_from_json(const json& j);
std::vector<ChainStep> default_chain(int n);

struct GZSystem {
  int n = 0;
  std::vector<ChainStep> chain;
  /// maps[s] projects the (n-s) x (n-s) level onto the next one.
  std::vector<SubmatrixMap> maps;
  /// Rows/columns of M_n kept at level k (index k-1).
  std::vector<std::vector<int>> level_rows;
  std::vector<std::vector<int>> level_cols;
  std::vector<RationalFn> hams;
  std::vector<int> levels;  // level k of each Hamiltonian
  std::vector<std::string> labels;

  /// Hamiltonians equal (as rational functions) to an earlier one.
  int duplicate_count() const;
};

/// Pullbacks of center_generators(k) along the chain, k = 1 ... n.
/// Throws InvalidChain for chains of the wrong length or out-of-range drops.
GZSystem gz_system(int n, const std::optional<std::vector<ChainStep>>& chain = std::nullopt);

json gz_to_json(const GZSystem& system);

/// Union D_n of the zero sets of Delta'_{l;k}, 1 <= k < l <= n.
class SingularLocus {
 public:
  explicit SingularLocus(int n);

  int n() const { return n_; }
  const std::vector<Poly>& denominators() const { return denominators_; }
  const std::vector<std::string>& labels() const { return labels_; }

  /// min over denominators of |Delta'_{l;k}(X)|; +inf when n = 1.
  double distance(const MatrixPoint& x) const;
  double distance(std::span<const cplx> x) const;
  /// distance below 1e-12 (1 + |X|_max^n).
  bool contains(const MatrixPoint& x) const;

 private:
  int n_;
  std::vector<Poly> denominators_;
  std::vector<CompiledPoly> compiled_;
  std::vector<std::string> labels_;
};

/// Numeric rank of the gradient matrix (rows = functions) at X.
/// Throws DenominatorVanishes.
int jacobian_rank(std::span<const RationalFn> hams, const MatrixPoint& x);
int jacobian_rank(std::span<const Poly> hams, const MatrixPoint& x);

}  // namespace detflow
