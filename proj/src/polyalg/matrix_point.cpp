#include "detflow/polyalg/matrix_point.hpp"

#include <algorithm>

#include "detflow/errors.hpp"

namespace detflow {

MatrixPoint::MatrixPoint(Shape shape, std::vector<cplx> values)
    : shape_(shape), values_(std::move(values)) {
  if (static_cast<int>(values_.size()) != shape_.size())
    throw ShapeMismatch("matrix point: expected " + std::to_string(shape_.size()) + " entries");
}

MatrixPoint MatrixPoint::exact(Shape shape, std::vector<GaussRat> entries) {
  std::vector<cplx> values;
  values.reserve(entries.size());
  for (const auto& e : entries) values.push_back(e.to_complex());
  MatrixPoint p(shape, std::move(values));
  p.exact_ = std::move(entries);
  return p;
}

MatrixPoint MatrixPoint::identity(int n) {
  std::vector<GaussRat> entries(n * n);
  for (int i = 0; i < n; ++i) entries[i * n + i] = 1;
  return exact({n, n}, std::move(entries));
}

std::span<const GaussRat> MatrixPoint::exact_values() const {
  if (!exact_) throw Error("matrix point carries no exact entries");
  return *exact_;
}

double MatrixPoint::max_abs() const {
  double m = 0;
  for (const auto& v : values_) m = std::max(m, std::abs(v));
  return m;
}

MatrixPoint random_point(Shape shape, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<cplx> values(shape.size());
  for (auto& v : values) {
    double re = unit(rng);
    double im = unit(rng);
    v = {re, im};
  }
  return {shape, std::move(values)};
}

MatrixPoint random_rational_point(Shape shape, std::mt19937_64& rng, int bound) {
  std::uniform_int_distribution<long> num(-bound, bound);
  std::uniform_int_distribution<long> den(1, bound);
  std::vector<GaussRat> entries(shape.size());
  for (auto& e : entries) {
    long q = den(rng);
    long a = num(rng);
    long b = num(rng);
    e = GaussRat::rational(a, q) + GaussRat::rational(b, q) * GaussRat::imaginary_unit();
  }
  return MatrixPoint::exact(shape, std::move(entries));
}

}  // namespace detflow
