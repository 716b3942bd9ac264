#include "detflow/polyalg/determinant.hpp"

#include <map>

#include "detflow/errors.hpp"

namespace detflow {

namespace {

// Laplace expansion along the first remaining row, memoised on the set of
// columns still available.
class Expander {
 public:
  Expander(Shape shape, std::span<const int> rows, std::span<const int> cols)
      : shape_(shape), rows_(rows), cols_(cols) {}

  Poly expand(std::size_t row, unsigned used) {
    if (row == rows_.size()) return Poly::constant(shape_, 1);
    auto it = memo_.find(used);
    if (it != memo_.end()) return it->second;
    Poly total(shape_);
    int sign = 1;
    for (std::size_t c = 0; c < cols_.size(); ++c) {
      if (used & (1u << c)) continue;
      Poly minor = expand(row + 1, used | (1u << c));
      if (!minor.is_zero()) {
        Poly term = Poly::variable(shape_, rows_[row], cols_[c]) * minor;
        if (sign > 0) total += term; else total -= term;
      }
      sign = -sign;
    }
    return memo_.emplace(used, std::move(total)).first->second;
  }

 private:
  Shape shape_;
  std::span<const int> rows_;
  std::span<const int> cols_;
  std::map<unsigned, Poly> memo_;
};

}  // namespace

Poly submatrix_determinant(Shape shape, std::span<const int> rows, std::span<const int> cols) {
  if (rows.size() != cols.size() || rows.empty())
    throw Error("determinant needs equally many (>= 1) rows and columns");
  if (rows.size() > 16) throw SizeGuard("determinant larger than 16x16");
  for (int r : rows)
    if (r < 1 || r > shape.rows) throw IndexOutOfRange("row index " + std::to_string(r) + " outside " + shape.to_string());
  for (int c : cols)
    if (c < 1 || c > shape.cols) throw IndexOutOfRange("column index " + std::to_string(c) + " outside " + shape.to_string());
  return Expander(shape, rows, cols).expand(0, 0);
}

}  // namespace detflow
