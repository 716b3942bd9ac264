#pragma once

#include <functional>
#include <string>
#include <vector>

#include "detflow/polyalg/compiled.hpp"
#include "detflow/polyalg/matrix_point.hpp"

namespace detflow {

struct FlowOptions {
  double theta = 0;       // ray angle: t = s e^{i theta}
  double arclength = 1;   // s in [0, arclength]
  double tol = 1e-10;
  double guard = 1e-8;    // abort when distance < guard (1 + |X|_max)
  /// Distance to the singular set; defaults to |denominator of h|.
  std::function<double(std::span<const cplx>)> locus_distance;
  /// -1 integrates the reversed field (negative controls only).
  double field_sign = 1;
  int max_steps = 200000;
};

/// Accepted steps of a numeric flow, including t = 0 and the endpoint.
struct Trajectory {
  Shape shape;
  std::vector<cplx> times;
  std::vector<MatrixPoint> points;
  std::vector<cplx> h_values;
  double tol = 0;
  int rejected = 0;

  const MatrixPoint& final_point() const { return points.back(); }
  /// Max |h(X(t)) - h(X0)| / (1 + |h(X0)|).
  double conservation_error() const;
  /// t_re,t_im,x11_re,x11_im,...,h_re,h_im
  std::string csv() const;
};

/// Dormand-Prince 5(4) along a ray of complex time with PI step control,
/// max step arclength/50. Throws DenominatorVanishes at X0 and
/// SingularityApproached once the guard trips.
Trajectory numeric_flow(const RationalFn& h, const MatrixPoint& x0, const FlowOptions& options = {});

/// Flow to a complex time t (straight segment from 0).
MatrixPoint numeric_flow_to(const RationalFn& h, const MatrixPoint& x0, cplx t, const FlowOptions& options = {});

}  // namespace detflow
