#include "detflow/gz/submatrix_map.hpp"

#include "detflow/errors.hpp"

namespace detflow {

namespace {

void check_index_list(const std::vector<int>& v, int bound, const char* what) {
  if (v.empty()) throw Error(std::string("submatrix map: empty ") + what);
  for (std::size_t a = 0; a < v.size(); ++a) {
    if (v[a] < 1 || v[a] > bound)
      throw IndexOutOfRange(std::string("submatrix map: ") + what + " index out of range");
    if (a > 0 && v[a] <= v[a - 1])
      throw Error(std::string("submatrix map: ") + what + " must be strictly increasing");
  }
}

}  // namespace

SubmatrixMap::SubmatrixMap(Shape ambient, std::vector<int> rows, std::vector<int> cols,
                           Direction dir)
    : ambient_(ambient), rows_(std::move(rows)), cols_(std::move(cols)), dir_(dir) {
  check_index_list(rows_, ambient_.rows, "row");
  check_index_list(cols_, ambient_.cols, "column");
}

MatrixPoint SubmatrixMap::apply(const MatrixPoint& x) const {
  if (x.shape() != source())
    throw ShapeMismatch("submatrix map expects a point of " + source().to_string());
  Shape sm = small();
  if (dir_ == Direction::Project) {
    if (x.has_exact()) {
      std::vector<GaussRat> e(sm.size());
      for (int a = 1; a <= sm.rows; ++a)
        for (int b = 1; b <= sm.cols; ++b)
          e[sm.var(a, b)] = x.exact_values()[ambient_.var(rows_[a - 1], cols_[b - 1])];
      return MatrixPoint::exact(sm, std::move(e));
    }
    MatrixPoint out(sm);
    for (int a = 1; a <= sm.rows; ++a)
      for (int b = 1; b <= sm.cols; ++b) out(a, b) = x(rows_[a - 1], cols_[b - 1]);
    return out;
  }
  if (x.has_exact()) {
    std::vector<GaussRat> e(ambient_.size());
    for (int a = 1; a <= sm.rows; ++a)
      for (int b = 1; b <= sm.cols; ++b)
        e[ambient_.var(rows_[a - 1], cols_[b - 1])] = x.exact_values()[sm.var(a, b)];
    return MatrixPoint::exact(ambient_, std::move(e));
  }
  MatrixPoint out(ambient_);
  for (int a = 1; a <= sm.rows; ++a)
    for (int b = 1; b <= sm.cols; ++b) out(rows_[a - 1], cols_[b - 1]) = x(a, b);
  return out;
}

std::vector<Poly> SubmatrixMap::coordinate_images() const {
  Shape sm = small();
  std::vector<Poly> images;
  if (dir_ == Direction::Project) {
    for (int v = 0; v < sm.size(); ++v)
      images.push_back(
          Poly::variable(ambient_, rows_[sm.row_of(v) - 1], cols_[sm.col_of(v) - 1]));
    return images;
  }
  images.assign(ambient_.size(), Poly(sm));
  for (int a = 1; a <= sm.rows; ++a)
    for (int b = 1; b <= sm.cols; ++b)
      images[ambient_.var(rows_[a - 1], cols_[b - 1])] = Poly::variable(sm, a, b);
  return images;
}

Poly SubmatrixMap::pullback(const Poly& f) const {
  if (f.shape() != target()) throw ShapeMismatch("pullback: function does not live on the target");
  return f.compose(source(), coordinate_images());
}

RationalFn SubmatrixMap::pullback(const RationalFn& f) const {
  if (f.shape() != target()) throw ShapeMismatch("pullback: function does not live on the target");
  return f.compose(source(), coordinate_images());
}

PoissonMapCheck verify_poisson_map(const SubmatrixMap& map, const GeneratorRule* source_rule,
                                   const GeneratorRule* target_rule) {
  PoissonMapCheck out;
  Shape t = map.target();
  std::vector<Poly> pulled;
  pulled.reserve(t.size());
  for (int v = 0; v < t.size(); ++v) pulled.push_back(map.pullback(Poly::from_var(t, v)));
  for (int a = 0; a < t.size(); ++a) {
    for (int b = 0; b < t.size(); ++b) {
      if (a == b) continue;
      Poly lhs = bracket(pulled[a], pulled[b], source_rule);
      Poly target_bracket = bracket(Poly::from_var(t, a), Poly::from_var(t, b), target_rule);
      Poly rhs = map.pullback(target_bracket);
      if (!(lhs == rhs)) {
        out.is_poisson = false;
        out.witness = std::make_pair(a, b);
        out.lhs = std::move(lhs);
        out.rhs = std::move(rhs);
        return out;
      }
    }
  }
  return out;
}

}  // namespace detflow
