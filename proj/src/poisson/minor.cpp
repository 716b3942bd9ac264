#include "detflow/poisson/minor.hpp"

#include <algorithm>
#include <cstdlib>

#include "detflow/errors.hpp"
#include "detflow/polyalg/determinant.hpp"

namespace detflow {

namespace {

int sign(int v) { return (v > 0) - (v < 0); }

void check_increasing(const std::vector<int>& v, const char* what) {
  for (std::size_t a = 0; a < v.size(); ++a) {
    if (v[a] < 1) throw IndexOutOfRange(std::string("minor ") + what + " index below 1");
    if (a > 0 && v[a] <= v[a - 1])
      throw Error(std::string("minor ") + what + " must be strictly increasing");
  }
}

void combinations(int n, int r, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == r) {
    out.push_back(cur);
    return;
  }
  for (int v = start; v <= n; ++v) {
    cur.push_back(v);
    combinations(n, r, v + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

MinorSpec::MinorSpec(std::vector<int> rows, std::vector<int> cols)
    : rows_(std::move(rows)), cols_(std::move(cols)) {
  if (rows_.empty() || rows_.size() != cols_.size())
    throw Error("minor needs equally many (>= 1) rows and columns");
  check_increasing(rows_, "rows");
  check_increasing(cols_, "cols");
}

bool MinorSpec::fits(Shape shape) const {
  return rows_.back() <= shape.rows && cols_.back() <= shape.cols;
}

bool MinorSpec::has_row(int i) const { return std::binary_search(rows_.begin(), rows_.end(), i); }
bool MinorSpec::has_col(int j) const { return std::binary_search(cols_.begin(), cols_.end(), j); }

std::string MinorSpec::label() const {
  auto join = [](const std::vector<int>& v) {
    std::string s;
    for (std::size_t a = 0; a < v.size(); ++a) s += (a ? "," : "") + std::to_string(v[a]);
    return s;
  };
  return "Δ_{" + join(rows_) + "|" + join(cols_) + "}";
}

json minor_spec_to_json(const MinorSpec& s) { return {{"rows", s.rows()}, {"cols", s.cols()}}; }

MinorSpec minor_spec_from_json(const json& j) {
  return {j.at("rows").get<std::vector<int>>(), j.at("cols").get<std::vector<int>>()};
}

std::vector<MinorSpec> all_minors(Shape shape, int max_size) {
  std::vector<MinorSpec> out;
  int top = std::min({max_size, shape.rows, shape.cols});
  for (int r = 1; r <= top; ++r) {
    std::vector<std::vector<int>> rows, cols;
    std::vector<int> cur;
    combinations(shape.rows, r, 1, cur, rows);
    combinations(shape.cols, r, 1, cur, cols);
    for (const auto& I : rows)
      for (const auto& J : cols) out.emplace_back(I, J);
  }
  return out;
}

Poly minor(const MinorSpec& spec, Shape shape) {
  if (!spec.fits(shape)) throw IndexOutOfRange(spec.label() + " does not fit " + shape.to_string());
  return submatrix_determinant(shape, spec.rows(), spec.cols());
}

Poly minor_bracket(int k, int l, const MinorSpec& spec, Shape shape) {
  if (!shape.contains(k, l)) throw IndexOutOfRange("minor_bracket: coordinate out of range");
  if (!spec.fits(shape)) throw IndexOutOfRange(spec.label() + " does not fit " + shape.to_string());
  Poly out(shape);
  const auto& I = spec.rows();
  const auto& J = spec.cols();
  for (std::size_t q = 0; q < I.size(); ++q) {
    int s = sign(I[q] - k);
    if (s == 0) continue;
    std::vector<int> rows = I;
    rows[q] = k;
    Poly term = Poly::variable(shape, I[q], l) * submatrix_determinant(shape, rows, J);
    out += term * GaussRat(s);
  }
  for (std::size_t q = 0; q < J.size(); ++q) {
    int s = sign(J[q] - l);
    if (s == 0) continue;
    std::vector<int> cols = J;
    cols[q] = l;
    Poly term = Poly::variable(shape, k, J[q]) * submatrix_determinant(shape, I, cols);
    out += term * GaussRat(s);
  }
  return out;
}

std::optional<int> set_sign(const std::vector<int>& set, int k) {
  if (std::binary_search(set.begin(), set.end(), k)) return 0;
  if (k < set.front()) return 1;
  if (k > set.back()) return -1;
  return std::nullopt;
}

std::optional<Poly> lemma_sign_bracket(int k, int l, const MinorSpec& spec, Shape shape) {
  auto si = set_sign(spec.rows(), k);
  auto sj = set_sign(spec.cols(), l);
  if (!si || !sj || std::abs(*si + *sj) > 1) return std::nullopt;
  return Poly::variable(shape, k, l) * minor(spec, shape) * GaussRat(*si + *sj);
}

}  // namespace detflow
