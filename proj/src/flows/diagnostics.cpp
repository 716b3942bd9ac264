#include "detflow/flows/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "detflow/flows/gz_flow.hpp"
#include "detflow/flows/minor_flow.hpp"
#include "detflow/poisson/field.hpp"

namespace detflow {

double relative_deviation(std::span<const cplx> a, std::span<const cplx> b) {
  double worst = 0;
  for (std::size_t v = 0; v < a.size(); ++v) worst = std::max(worst, std::abs(a[v] - b[v]) / (1 + std::abs(b[v])));
  return worst;
}

CrossValidation cross_validate(const ClosedFlow& flow, const Trajectory& oracle) {
  CrossValidation out;
  for (std::size_t s = 0; s < oracle.times.size(); ++s) {
    const MatrixPoint closed = flow.evaluate(oracle.times[s]);
    double d = relative_deviation(closed.values(), oracle.points[s].values());
    if (!std::isfinite(d)) d = std::numeric_limits<double>::infinity();
    if (d >= out.max_deviation) {
      out.max_deviation = d;
      out.worst_time = oracle.times[s];
    }
    ++out.samples;
  }
  return out;
}

double ode_residual(const ClosedFlow& flow, const RationalFn& h, std::span<const cplx> times) {
  const CompiledFunction f(h);
  double worst = 0;
  for (const cplx t : times) {
    const MatrixPoint x = flow.evaluate(t);
    const auto field = hamiltonian_field(f, x.values());
    worst = std::max(worst, relative_deviation(flow.derivative(t), field));
  }
  return worst;
}

double conservation_error(const ClosedFlow& flow, std::span<const RationalFn> family, std::span<const cplx> times) {
  double worst = 0;
  for (const auto& f : family) {
    const cplx f0 = f.evaluate(flow.x0.values());
    for (const cplx t : times)
      worst = std::max(worst, std::abs(f.evaluate(flow.evaluate(t).values()) - f0) / (1 + std::abs(f0)));
  }
  return worst;
}

double conservation_error(const Trajectory& traj, std::span<const RationalFn> family) {
  double worst = 0;
  for (const auto& f : family) {
    const CompiledFunction c(f);
    const cplx f0 = c.value(traj.points.front().values());
    for (const auto& p : traj.points) worst = std::max(worst, std::abs(c.value(p.values()) - f0) / (1 + std::abs(f0)));
  }
  return worst;
}

DegreeReport degree_report(const ClosedFlow& flow) {
  DegreeReport r;
  for (const auto& e : flow.entries) {
    r.max_polynomial_degree = std::max(r.max_polynomial_degree, e.polynomial_degree());
    r.max_exponential_degree = std::max(r.max_exponential_degree, e.max_exponential_degree());
  }
  return r;
}

FlowMap closed_minor_map(const MinorSpec& spec) {
  return [spec](const MatrixPoint& x, cplx t) { return minor_flow_closed(spec, x).evaluate(t); };
}

FlowMap closed_gz_map(GZIndex index) {
  return [index](const MatrixPoint& x, cplx t) { return gz_flow_closed(index, x).evaluate(t); };
}

FlowMap numeric_map(const RationalFn& h, FlowOptions options) {
  return [h, options](const MatrixPoint& x, cplx t) { return numeric_flow_to(h, x, t, options); };
}

CommutationResult flow_commutation(const FlowMap& phi1, const FlowMap& phi2, const MatrixPoint& x0, cplx s,
                                   cplx t) {
  const MatrixPoint a = phi1(phi2(x0, t), s);
  const MatrixPoint b = phi2(phi1(x0, s), t);
  return {relative_deviation(a.values(), b.values())};
}

bool DiscretenessReport::passed() const {
  for (const auto& p : probes) {
    if (p.identically_zero || p.value_at_zero == cplx(0.0)) return false;
    if (std::abs(p.value_at_zero - p.expected_at_zero) > 1e-12 * (1 + std::abs(p.expected_at_zero))) return false;
    if (p.min_separation <= kIsolation) return false;
  }
  return true;
}

DiscretenessReport discreteness_probe(const ClosedFlow& flow, const SingularLocus& locus, double radius, int grid) {
  DiscretenessReport report;
  report.radius = radius;
  const double spacing = 2 * radius / (grid - 1);
  auto at = [&](int a, int b) { return cplx(-radius + a * spacing, -radius + b * spacing); };

  for (std::size_t d = 0; d < locus.denominators().size(); ++d) {
    DenominatorProbe probe;
    probe.label = locus.labels()[d];
    const QEFun f = substitute(locus.denominators()[d], flow.entries);
    const QEFun df = f.derivative();
    probe.identically_zero = f.is_zero();
    probe.value_at_zero = f(0.0);
    probe.expected_at_zero = locus.denominators()[d].evaluate(flow.x0.values());

    if (!probe.identically_zero) {
      std::vector<double> mag(grid * grid);
      double scale = 0;
      for (int a = 0; a < grid; ++a)
        for (int b = 0; b < grid; ++b) {
          double m = std::abs(f(at(a, b)));
          mag[a * grid + b] = std::isfinite(m) ? m : std::numeric_limits<double>::infinity();
          if (std::isfinite(m)) scale = std::max(scale, m);
        }
      for (int a = 1; a + 1 < grid; ++a)
        for (int b = 1; b + 1 < grid; ++b) {
          const double m = mag[a * grid + b];
          bool dip = std::isfinite(m);
          for (int da = -1; da <= 1 && dip; ++da)
            for (int db = -1; db <= 1 && dip; ++db)
              if ((da || db) && mag[(a + da) * grid + b + db] < m) dip = false;
          if (!dip) continue;
          cplx z = at(a, b);
          bool converged = false;
          for (int it = 0; it < 100; ++it) {
            const cplx fz = f(z), dz = df(z);
            if (dz == cplx(0.0)) break;
            const cplx step = fz / dz;
            z -= step;
            if (std::abs(step) < 1e-14 * (1 + std::abs(z))) {
              converged = true;
              break;
            }
          }
          const double residual = std::abs(f(z));
          if (!converged && !(residual <= 1e-10 * (1 + scale))) continue;
          if (std::abs(z) > radius) continue;
          bool seen = false;
          for (const auto& w : probe.zeros) seen = seen || std::abs(w - z) < 1e-6 * (1 + std::abs(z));
          if (!seen) probe.zeros.push_back(z);
        }
    }
    probe.min_separation = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < probe.zeros.size(); ++a)
      for (std::size_t b = a + 1; b < probe.zeros.size(); ++b)
        probe.min_separation = std::min(probe.min_separation, std::abs(probe.zeros[a] - probe.zeros[b]));
    report.probes.push_back(std::move(probe));
  }
  return report;
}

}  // namespace detflow

namespace detflow {

MatrixPoint generic_point(Shape shape, std::mt19937_64& rng, double margin) {
  if (shape.rows != shape.cols) return random_point(shape, rng);
  const SingularLocus locus(shape.rows);
  for (;;) {
    MatrixPoint x = random_point(shape, rng);
    if (locus.distance(x) >= margin * (1 + x.max_abs())) return x;
  }
}

}  // namespace detflow
