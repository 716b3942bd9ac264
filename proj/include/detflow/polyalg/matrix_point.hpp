#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "detflow/polyalg/poly.hpp"

namespace detflow {

using cplx = std::complex<double>;

/// A point X of M_{m,n}, stored row-major. Exact Gaussian rational entries
/// may be carried alongside the floating values.
class MatrixPoint {
 public:
  MatrixPoint() = default;
  explicit MatrixPoint(Shape shape) : shape_(shape), values_(shape.size()) {}
  MatrixPoint(Shape shape, std::vector<cplx> values);
  static MatrixPoint exact(Shape shape, std::vector<GaussRat> entries);
  static MatrixPoint identity(int n);

  Shape shape() const { return shape_; }
  std::span<const cplx> values() const { return values_; }
  std::span<cplx> values() { return values_; }
  bool has_exact() const { return exact_.has_value(); }
  std::span<const GaussRat> exact_values() const;

  cplx operator()(int i, int j) const { return values_[shape_.var(i, j)]; }
  cplx& operator()(int i, int j) {
    exact_.reset();
    return values_[shape_.var(i, j)];
  }

  double max_abs() const;

 private:
  Shape shape_;
  std::vector<cplx> values_;
  std::optional<std::vector<GaussRat>> exact_;
};

/// Entries uniform on the complex unit square [0,1] + i[0,1].
MatrixPoint random_point(Shape shape, std::mt19937_64& rng);

/// Exact entries (a + bi)/q with small integers; used where exact
/// evaluation is wanted.
MatrixPoint random_rational_point(Shape shape, std::mt19937_64& rng, int bound = 9);

}  // namespace detflow
