#include "detflow/flows/numeric_flow.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "detflow/errors.hpp"
#include "detflow/poisson/field.hpp"

namespace detflow {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr std::array<double, 7> kC = {0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1, 1};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
constexpr std::array<double, 7> kB = {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84, 0};
constexpr std::array<double, 7> kE = {71.0 / 57600,     0, -71.0 / 16695, 71.0 / 1920, -17253.0 / 339200,
                                      22.0 / 525, -1.0 / 40};

double max_abs(std::span<const cplx> x) {
  double m = 0;
  for (const auto& v : x) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

double Trajectory::conservation_error() const {
  double worst = 0;
  const cplx h0 = h_values.front();
  for (const auto& h : h_values) worst = std::max(worst, std::abs(h - h0) / (1 + std::abs(h0)));
  return worst;
}

std::string Trajectory::csv() const {
  std::ostringstream out;
  out.precision(17);
  out << "t_re,t_im";
  for (int i = 1; i <= shape.rows; ++i)
    for (int j = 1; j <= shape.cols; ++j) out << ",x" << i << j << "_re,x" << i << j << "_im";
  out << ",h_value_re,h_value_im\n";
  for (std::size_t s = 0; s < times.size(); ++s) {
    out << times[s].real() << ',' << times[s].imag();
    for (const auto& v : points[s].values()) out << ',' << v.real() << ',' << v.imag();
    out << ',' << h_values[s].real() << ',' << h_values[s].imag() << '\n';
  }
  return out.str();
}

Trajectory numeric_flow(const RationalFn& h, const MatrixPoint& x0, const FlowOptions& options) {
  const CompiledFunction f(h);
  const Shape shape = x0.shape();
  if (h.shape() != shape) throw ShapeMismatch("numeric_flow: Hamiltonian and point shapes differ");
  const std::size_t dim = shape.size();
  const cplx dir = std::polar(1.0, options.theta);
  const double total = options.arclength;

  auto distance = options.locus_distance;
  if (!distance && !h.is_polynomial())
    distance = [&f](std::span<const cplx> x) { return std::abs(f.denominator(x)); };

  Trajectory traj;
  traj.shape = shape;
  traj.tol = options.tol;
  std::vector<cplx> y(x0.values().begin(), x0.values().end());
  traj.times.push_back(0.0);
  traj.points.push_back(x0);
  traj.h_values.push_back(f.value(y));  // DenominatorVanishes at X0
  if (total <= 0) return traj;

  auto rhs = [&](std::span<const cplx> x) {
    auto v = hamiltonian_field(f, x);
    for (auto& c : v) c *= dir * options.field_sign;
    return v;
  };

  std::array<std::vector<cplx>, 7> k;
  k[0] = rhs(y);
  const double hmax = total / 50;
  double step = std::min(hmax, 1e-2 * (1 + max_abs(y)) / (1e-300 + max_abs(k[0])));
  double s = 0;
  double err_prev = 1e-4;
  std::vector<cplx> stage(dim), ynew(dim), err(dim);

  for (int iter = 0; s < total; ++iter) {
    if (iter > options.max_steps) throw NoConvergence("numeric_flow: step budget exhausted");
    const bool last = step >= 0.999 * (total - s);
    if (last) step = total - s;
    if (step < 1e-14 * total)
      throw SingularityApproached("numeric_flow: step size underflow", s * dir);

    for (int st = 1; st < 7; ++st) {
      for (std::size_t v = 0; v < dim; ++v) {
        cplx acc = 0;
        for (int q = 0; q < st; ++q) acc += kA[st][q] * k[q][v];
        stage[v] = y[v] + step * acc;
      }
      k[st] = rhs(stage);
    }
    // The 7th stage is evaluated at the 5th-order solution (FSAL).
    ynew = stage;
    double norm = 0;
    for (std::size_t v = 0; v < dim; ++v) {
      cplx e = 0;
      for (int q = 0; q < 7; ++q) e += kE[q] * k[q][v];
      const double sc = options.tol + options.tol * std::max(std::abs(y[v]), std::abs(ynew[v]));
      const double r = std::abs(step * e) / sc;
      norm += r * r;
    }
    norm = std::sqrt(norm / static_cast<double>(dim));
    if (!std::isfinite(norm)) norm = 1e10;

    if (norm <= 1) {
      if (distance) {
        const double d = distance(ynew);
        if (!(d >= options.guard * (1 + max_abs(ynew))))
          throw SingularityApproached("numeric_flow: trajectory approached the singular locus", s * dir);
      }
      s = last ? total : s + step;
      y = ynew;
      k[0] = k[6];
      traj.times.push_back(s * dir);
      traj.points.emplace_back(shape, y);
      traj.h_values.push_back(f.value(y));
      const double e = std::max(norm, 1e-10);
      double factor = 0.9 * std::pow(e, -0.7 / 5) * std::pow(err_prev, 0.4 / 5);
      factor = std::clamp(factor, 0.2, 5.0);
      err_prev = e;
      step = std::min(hmax, step * factor);
    } else {
      ++traj.rejected;
      step *= std::max(0.2, 0.9 * std::pow(norm, -0.2));
    }
  }
  return traj;
}

MatrixPoint numeric_flow_to(const RationalFn& h, const MatrixPoint& x0, cplx t, const FlowOptions& options) {
  if (t == cplx(0.0)) return x0;
  FlowOptions o = options;
  o.theta = std::arg(t);
  o.arclength = std::abs(t);
  return numeric_flow(h, x0, o).final_point();
}

}  // namespace detflow
