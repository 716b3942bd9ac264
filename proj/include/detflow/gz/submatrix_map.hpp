#pragma once

#include <optional>
#include <vector>

#include "detflow/poisson/bracket.hpp"
#include "detflow/polyalg/matrix_point.hpp"

namespace detflow {

/// Projection X -> X[I, J] out of M_{m,n}, or the zero-padded embedding of
/// M_{|I|,|J|} into M_{m,n}.
class SubmatrixMap {
 public:
  enum class Direction { Project, Embed };

  SubmatrixMap(Shape ambient, std::vector<int> rows, std::vector<int> cols, Direction dir);

  Shape ambient() const { return ambient_; }
  Shape small() const { return {static_cast<int>(rows_.size()), static_cast<int>(cols_.size())}; }
  Shape source() const { return dir_ == Direction::Project ? ambient_ : small(); }
  Shape target() const { return dir_ == Direction::Project ? small() : ambient_; }
  const std::vector<int>& rows() const { return rows_; }
  const std::vector<int>& cols() const { return cols_; }
  Direction direction() const { return dir_; }

  MatrixPoint apply(const MatrixPoint& x) const;
  /// f o map for f a function on the target.
  Poly pullback(const Poly& f) const;
  RationalFn pullback(const RationalFn& f) const;

 private:
  std::vector<Poly> coordinate_images() const;

  Shape ambient_;
  std::vector<int> rows_;
  std::vector<int> cols_;
  Direction dir_;
};

struct PoissonMapCheck {
  bool is_poisson = true;
  /// Target coordinates (a, b) of the first failing generator pair.
  std::optional<std::pair<int, int>> witness;
  std::optional<Poly> lhs;  // {f o phi, g o phi} on the source
  std::optional<Poly> rhs;  // {f, g} o phi
};

/// Checks {f o phi, g o phi}_source = {f, g}_target o phi exactly for all
/// generator pairs f, g of the target. Either side may use a non-standard
/// generator rule (used for negative controls).
PoissonMapCheck verify_poisson_map(const SubmatrixMap& map,
                                   const GeneratorRule* source_rule = nullptr,
                                   const GeneratorRule* target_rule = nullptr);

}  // namespace detflow
