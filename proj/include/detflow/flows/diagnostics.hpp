#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "detflow/flows/closed_flow.hpp"
#include "detflow/flows/numeric_flow.hpp"
#include "detflow/gz/gz_system.hpp"
#include "detflow/poisson/minor.hpp"

namespace detflow {

/// Relative entrywise deviation |a - b| / (1 + |b|), maximised.
double relative_deviation(std::span<const cplx> a, std::span<const cplx> b);

struct CrossValidation {
  static constexpr double kTolerance = 1e-6;
  double max_deviation = 0;
  cplx worst_time = 0;
  std::size_t samples = 0;
  bool passed() const { return max_deviation < kTolerance; }
};

/// Closed-form flow against a numeric trajectory, at every accepted step.
CrossValidation cross_validate(const ClosedFlow& flow, const Trajectory& oracle);

/// max over sample times of the relative deviation of gamma'(t) from the
/// Hamiltonian field at gamma(t).
double ode_residual(const ClosedFlow& flow, const RationalFn& h, std::span<const cplx> times);

/// max over times and functions of |f(gamma(t)) - f(X0)| / (1 + |f(X0)|).
double conservation_error(const ClosedFlow& flow, std::span<const RationalFn> family, std::span<const cplx> times);
double conservation_error(const Trajectory& traj, std::span<const RationalFn> family);

struct DegreeReport {
  int max_polynomial_degree = -1;   // over entries, exponent-0 part
  int max_exponential_degree = -1;  // over entries, coefficients of e^{at}, a != 0
};
DegreeReport degree_report(const ClosedFlow& flow);

/// Flow map X -> Phi^t_h(X).
using FlowMap = std::function<MatrixPoint(const MatrixPoint&, cplx)>;

FlowMap closed_minor_map(const MinorSpec& spec);
FlowMap closed_gz_map(GZIndex index);
FlowMap numeric_map(const RationalFn& h, FlowOptions options = {});

struct CommutationResult {
  static constexpr double kTolerance = 1e-6;
  double deviation = 0;
  bool passed() const { return deviation < kTolerance; }
};

/// Phi^s_1 Phi^t_2 (X0) against Phi^t_2 Phi^s_1 (X0).
CommutationResult flow_commutation(const FlowMap& phi1, const FlowMap& phi2, const MatrixPoint& x0, cplx s,
                                   cplx t);

struct DenominatorProbe {
  std::string label;
  cplx value_at_zero = 0;
  cplx expected_at_zero = 0;
  bool identically_zero = false;
  std::vector<cplx> zeros;
  /// Minimal pairwise distance between zeros; +inf for fewer than two.
  double min_separation = 0;
};

struct DiscretenessReport {
  static constexpr double kIsolation = 1e-3;
  double radius = 0;
  std::vector<DenominatorProbe> probes;
  /// Every composite is nonzero at t = 0, matches Delta'(X0) there, and
  /// has pairwise isolated zeros.
  bool passed() const;
};

/// Zeros of each Delta'_{l;k} o gamma on |t| <= radius: grid search for dips
/// of |f|, Newton refinement, deduplication.
DiscretenessReport discreteness_probe(const ClosedFlow& flow, const SingularLocus& locus, double radius = 5,
                                      int grid = 81);

}  // namespace detflow

namespace detflow {

/// Uniform point of the complex unit square, resampled until it clears the
/// guard: for square shapes, distance to D_n >= margin (1 + |X|_max).
MatrixPoint generic_point(Shape shape, std::mt19937_64& rng, double margin = 1e-8);

}  // namespace detflow
