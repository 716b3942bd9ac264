#include "detflow/gz/gz_system.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "detflow/errors.hpp"
#include "detflow/poisson/field.hpp"
#include "detflow/poisson/minor.hpp"

namespace detflow {

namespace {

std::vector<int> range(int lo, int hi) {
  std::vector<int> v;
  for (int i = lo; i <= hi; ++i) v.push_back(i);
  return v;
}

}  // namespace

Poly delta_upper(Shape shape, int l, int k) {
  return minor(MinorSpec(range(1, k), range(l - k + 1, l)), shape);
}

Poly delta_lower(Shape shape, int l, int k) {
  return minor(MinorSpec(range(l - k + 1, l), range(1, k)), shape);
}

Poly delta_leading(Shape shape, int l) { return minor(MinorSpec(range(1, l), range(1, l)), shape); }

std::vector<RationalFn> center_generators(int n) {
  if (n < 1) throw Error("center_generators needs n >= 1");
  Shape shape{n, n};
  std::vector<RationalFn> out;
  for (int k = 1; k < n; ++k) out.emplace_back(delta_upper(shape, n, k), delta_lower(shape, n, n - k));
  out.emplace_back(delta_leading(shape, n));
  return out;
}

std::string GZIndex::label() const {
  if (is_determinant()) return "Δ_" + std::to_string(l);
  return "Δ_{" + std::to_string(l) + ";" + std::to_string(k) + "}/Δ'_{" + std::to_string(l) + ";" +
         std::to_string(l - k) + "}";
}

RationalFn gz_hamiltonian(int n, GZIndex idx) {
  if (idx.l < 1 || idx.l > n || idx.k < 1 || idx.k > idx.l)
    throw Error("GZ Hamiltonian index (" + std::to_string(idx.l) + "," + std::to_string(idx.k) +
                ") outside M_" + std::to_string(n));
  Shape shape{n, n};
  if (idx.is_determinant()) return RationalFn(delta_leading(shape, idx.l));
  return {delta_upper(shape, idx.l, idx.k), delta_lower(shape, idx.l, idx.l - idx.k)};
}

std::vector<GZIndex> gz_indices(int n) {
  std::vector<GZIndex> out;
  for (int l = 1; l <= n; ++l)
    for (int k = 1; k <= l; ++k) out.push_back({l, k});
  return out;
}

json chain_to_json(const std::vector<ChainStep>& chain) {
  json out = json::array();
  for (const auto& s : chain) out.push_back({{"drop_row", s.drop_row}, {"drop_col", s.drop_col}});
  return out;
}

std::vector<ChainStep> chain_from_json(const json& j) {
  if (!j.is_array()) throw InvalidChain("chain JSON must be a list");
  std::vector<ChainStep> out;
  for (const auto& s : j) {
    if (!s.is_object() || !s.contains("drop_row") || !s.contains("drop_col"))
      throw InvalidChain("chain step must be {\"drop_row\": r, \"drop_col\": c}");
    out.push_back({s["drop_row"].get<int>(), s["drop_col"].get<int>()});
  }
  return out;
}

std::vector<ChainStep> default_chain(int n) {
  std::vector<ChainStep> out;
  for (int k = n; k >= 2; --k) out.push_back({k, k});
  return out;
}

int GZSystem::duplicate_count() const {
  int dup = 0;
  for (std::size_t a = 0; a < hams.size(); ++a)
    for (std::size_t b = 0; b < a; ++b)
      if (hams[a] == hams[b]) {
        ++dup;
        break;
      }
  return dup;
}

GZSystem gz_system(int n, const std::optional<std::vector<ChainStep>>& chain) {
  if (n < 1) throw Error("gz_system needs n >= 1");
  GZSystem sys;
  sys.n = n;
  sys.chain = chain ? *chain : default_chain(n);
  if (static_cast<int>(sys.chain.size()) != n - 1)
    throw InvalidChain("chain for M_" + std::to_string(n) + " needs " + std::to_string(n - 1) +
                       " steps, got " + std::to_string(sys.chain.size()));

  Shape shape{n, n};
  sys.level_rows.resize(n);
  sys.level_cols.resize(n);
  sys.level_rows[n - 1] = range(1, n);
  sys.level_cols[n - 1] = range(1, n);
  for (int k = n; k >= 2; --k) {
    const ChainStep& step = sys.chain[n - k];
    if (step.drop_row < 1 || step.drop_row > k || step.drop_col < 1 || step.drop_col > k)
      throw InvalidChain("step " + std::to_string(n - k + 1) + " drops row/col outside [1," +
                         std::to_string(k) + "]");
    std::vector<int> keep_r, keep_c;
    for (int a = 1; a <= k; ++a) {
      if (a != step.drop_row) keep_r.push_back(a);
      if (a != step.drop_col) keep_c.push_back(a);
    }
    sys.maps.emplace_back(Shape{k, k}, keep_r, keep_c, SubmatrixMap::Direction::Project);
    auto& rows = sys.level_rows[k - 2];
    auto& cols = sys.level_cols[k - 2];
    for (int a : keep_r) rows.push_back(sys.level_rows[k - 1][a - 1]);
    for (int a : keep_c) cols.push_back(sys.level_cols[k - 1][a - 1]);
  }

  for (int k = 1; k <= n; ++k) {
    SubmatrixMap composite(shape, sys.level_rows[k - 1], sys.level_cols[k - 1],
                           SubmatrixMap::Direction::Project);
    auto gens = center_generators(k);
    for (std::size_t g = 0; g < gens.size(); ++g) {
      sys.hams.push_back(composite.pullback(gens[g]));
      sys.levels.push_back(k);
      GZIndex idx{k, g + 1 < gens.size() ? static_cast<int>(g) + 1 : k};
      sys.labels.push_back("level " + std::to_string(k) + ": " + idx.label());
    }
  }
  return sys;
}

json gz_to_json(const GZSystem& sys) {
  json hams = json::array();
  for (std::size_t a = 0; a < sys.hams.size(); ++a)
    hams.push_back({{"label", sys.labels[a]}, {"level", sys.levels[a]}, {"function", rational_to_json(sys.hams[a])}});
  return {{"n", sys.n}, {"chain", chain_to_json(sys.chain)}, {"hamiltonians", hams}};
}

SingularLocus::SingularLocus(int n) : n_(n) {
  Shape shape{n, n};
  for (int l = 2; l <= n; ++l) {
    for (int k = 1; k < l; ++k) {
      denominators_.push_back(delta_lower(shape, l, k));
      compiled_.emplace_back(denominators_.back());
      labels_.push_back("Δ'_{" + std::to_string(l) + ";" + std::to_string(k) + "}");
    }
  }
}

double SingularLocus::distance(std::span<const cplx> x) const {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& p : compiled_) d = std::min(d, std::abs(p(x)));
  return d;
}

double SingularLocus::distance(const MatrixPoint& x) const {
  if (x.shape() != Shape{n_, n_}) throw ShapeMismatch("singular locus: point shape mismatch");
  return distance(x.values());
}

bool SingularLocus::contains(const MatrixPoint& x) const {
  double scale = 1.0 + std::pow(x.max_abs(), n_);
  return distance(x) < kSingularTolerance * scale;
}

int jacobian_rank(std::span<const RationalFn> hams, const MatrixPoint& x) {
  if (hams.empty()) return 0;
  Eigen::MatrixXcd jac(static_cast<Eigen::Index>(hams.size()), x.shape().size());
  for (std::size_t r = 0; r < hams.size(); ++r) {
    if (hams[r].shape() != x.shape()) throw ShapeMismatch("jacobian_rank: shape mismatch");
    auto grad = CompiledFunction(hams[r]).gradient(x.values());
    for (int c = 0; c < x.shape().size(); ++c) jac(static_cast<Eigen::Index>(r), c) = grad[c];
  }
  return numeric_rank(jac);
}

int jacobian_rank(std::span<const Poly> hams, const MatrixPoint& x) {
  std::vector<RationalFn> r(hams.begin(), hams.end());
  return jacobian_rank(r, x);
}

}  // namespace detflow
