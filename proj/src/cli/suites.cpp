#include "detflow/cli/suites.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <random>
#include <thread>

#include "detflow/errors.hpp"
#include "detflow/flows/diagnostics.hpp"
#include "detflow/flows/gz_flow.hpp"
#include "detflow/flows/minor_flow.hpp"
#include "detflow/gz/gz_system.hpp"
#include "detflow/poisson/bracket.hpp"
#include "detflow/poisson/field.hpp"
#include "detflow/poisson/minor.hpp"
#include "detflow/weyl/kz.hpp"

namespace detflow {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Independent stream per (seed, n, tag) so results do not depend on scheduling.
std::mt19937_64 stream(std::uint64_t seed, int n, int tag) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(tag)};
  return std::mt19937_64(seq);
}

Poly random_poly(Shape shape, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> var(0, shape.size() - 1), deg(0, 2), coeff(-4, 4), terms(1, 3);
  Poly p(shape);
  for (int t = terms(rng); t > 0; --t) {
    Monomial m;
    for (int d = deg(rng); d > 0; --d) m = m * Monomial::variable(var(rng));
    p.add_term(m, GaussRat(mpq_class(coeff(rng)), mpq_class(coeff(rng))));
  }
  return p;
}

std::string tag(const std::string& base, int n) { return base + ".n" + std::to_string(n); }

void algebra_checks(int n, std::uint64_t seed, std::vector<std::pair<std::string, CheckTask>>& tasks) {
  const Shape shape{n, n};
  tasks.emplace_back(tag("algebra.antisymmetry_leibniz", n), [=] {
    auto rng = stream(seed, n, 1);
    int failures = 0;
    for (int trial = 0; trial < 20; ++trial) {
      const Poly f = random_poly(shape, rng), g = random_poly(shape, rng), h = random_poly(shape, rng);
      if (!(bracket(f, g) + bracket(g, f)).is_zero()) ++failures;
      if (!(bracket(f, g * h) - bracket(f, g) * h - g * bracket(f, h)).is_zero()) ++failures;
    }
    return check("", failures == 0, failures, 0, "20 random pairs/triples, exact");
  });
  tasks.emplace_back(tag("algebra.jacobi", n), [=] {
    int failures = 0, triples = 0;
    for (int a = 0; a < shape.size(); ++a)
      for (int b = a + 1; b < shape.size(); ++b)
        for (int c = b + 1; c < shape.size(); ++c, ++triples)
          if (!jacobiator(a, b, c, shape).is_zero()) ++failures;
    return check("", failures == 0, failures, 0, std::to_string(triples) + " generator triples, exact");
  });
  tasks.emplace_back(tag("algebra.minor_bracket", n), [=] {
    int failures = 0, cases = 0, lemma = 0;
    for (const auto& spec : all_minors(shape, std::min(n, 3))) {
      const Poly m = minor(spec, shape);
      for (int k = 1; k <= n; ++k)
        for (int l = 1; l <= n; ++l, ++cases) {
          const Poly closed = minor_bracket(k, l, spec, shape);
          if (closed != bracket(Poly::variable(shape, k, l), m)) ++failures;
          if (auto sign_form = lemma_sign_bracket(k, l, spec, shape)) {
            ++lemma;
            if (*sign_form != closed) ++failures;
          }
        }
    }
    return check("", failures == 0, failures, 0,
                 std::to_string(cases) + " (coordinate, minor) pairs, " + std::to_string(lemma) + " in sign form");
  });
  tasks.emplace_back(tag("algebra.poisson_maps", n), [=] {
    int failures = 0, maps = 0;
    const int full = (1 << n) - 1;
    // Corner-anchored submatrices keep the count small: rows and columns
    // drawn from subsets containing index 1.
    for (int rm = 1; rm <= full; rm += 2)
      for (int cm = 1; cm <= full; cm += 2) {
        std::vector<int> rows, cols;
        for (int i = 0; i < n; ++i) {
          if (rm >> i & 1) rows.push_back(i + 1);
          if (cm >> i & 1) cols.push_back(i + 1);
        }
        for (auto dir : {SubmatrixMap::Direction::Project, SubmatrixMap::Direction::Embed}) {
          ++maps;
          if (!verify_poisson_map(SubmatrixMap(shape, rows, cols, dir)).is_poisson) ++failures;
        }
      }
    return check("", failures == 0, failures, 0, std::to_string(maps) + " projections/embeddings, exact");
  });
}

void kz_checks(int n, std::uint64_t seed, std::vector<std::pair<std::string, CheckTask>>& tasks) {
  tasks.emplace_back(tag("kz.commute_and_rank", n), [=] {
    auto rng = stream(seed, n, 2);
    const auto words = all_reduced_words(Permutation::longest(n));
    int failures = 0;
    for (const auto& w : words) {
      const KZSystem sys = kz_hamiltonians(n, w);  // throws CommutativityFailure
      const MatrixPoint x = generic_point({n, n}, rng);
      if (jacobian_rank(sys.hams, x) != n * (n - 1) / 2) ++failures;
    }
    return check("", failures == 0, failures, 0,
                 std::to_string(words.size()) + " reduced words, all pairs commute, rank n(n-1)/2");
  });
}

void gz_checks(int n, std::uint64_t seed, std::vector<std::pair<std::string, CheckTask>>& tasks) {
  const Shape shape{n, n};
  tasks.emplace_back(tag("gz.center", n), [=] {
    auto rng = stream(seed, n, 3);
    double worst = 0;
    for (const auto& h : center_generators(n)) {
      if (n <= 3) {
        if (!is_casimir(h).is_casimir) worst = 1;
        continue;
      }
      const CompiledFunction f(h);
      for (int p = 0; p < 20; ++p) {
        const MatrixPoint x = generic_point(shape, rng);
        const auto grad = f.gradient(x.values());
        for (int v = 0; v < shape.size(); ++v) {
          std::vector<cplx> unit(shape.size(), 0.0);
          unit[v] = 1.0;
          worst = std::max(worst, numeric_bracket(unit, grad, x.values(), shape).relative());
        }
      }
    }
    return check("", worst < 1e-10, worst, 1e-10, n <= 3 ? "exact" : "20 random points");
  });
  tasks.emplace_back(tag("gz.commute", n), [=] {
    auto rng = stream(seed, n, 4);
    const GZSystem sys = gz_system(n);
    double worst = 0;
    std::vector<CompiledFunction> compiled(sys.hams.begin(), sys.hams.end());
    std::vector<MatrixPoint> points;
    for (int p = 0; p < 5; ++p) points.push_back(generic_point(shape, rng));
    for (std::size_t a = 0; a < sys.hams.size(); ++a)
      for (std::size_t b = a + 1; b < sys.hams.size(); ++b) {
        if (n <= 3) {
          if (!bracket(sys.hams[a], sys.hams[b]).is_zero()) worst = 1;
          continue;
        }
        for (const auto& x : points)
          worst = std::max(worst, numeric_bracket(compiled[a].gradient(x.values()), compiled[b].gradient(x.values()),
                                                  x.values(), shape)
                                      .relative());
      }
    return check("", worst < 1e-10, worst, 1e-10, n <= 3 ? "exact" : "5 random points");
  });
  tasks.emplace_back(tag("gz.jacobian_rank", n), [=] {
    auto rng = stream(seed, n, 5);
    const GZSystem sys = gz_system(n);
    const int expected = n * (n + 1) / 2 - sys.duplicate_count();
    int worst = expected;
    for (int p = 0; p < 5; ++p) worst = std::min(worst, jacobian_rank(sys.hams, generic_point(shape, rng)));
    return check("", worst == expected, worst, expected,
                 "expected n(n+1)/2 - duplicates = " + std::to_string(expected));
  });
  tasks.emplace_back(tag("gz.bivector_rank", n), [=] {
    auto rng = stream(seed, n, 6);
    int lowest = n * n;
    for (int p = 0; p < 5; ++p) lowest = std::min(lowest, bivector_rank(generic_point(shape, rng)));
    return check("", lowest == n * (n - 1), lowest, n * (n - 1), "generic bivector rank n(n-1)");
  });
  tasks.emplace_back(tag("gz.identity_on_locus", n), [=] {
    const bool on = n == 1 || SingularLocus(n).contains(MatrixPoint::identity(n));
    return check("", on, on ? 1 : 0, 1, "identity lies on D_n (n >= 2)");
  });
}

void flow_checks(int n, std::uint64_t seed, std::vector<std::pair<std::string, CheckTask>>& tasks) {
  const Shape shape{n, n};
  tasks.emplace_back(tag("flows.minor_cross_validation", n), [=] {
    auto rng = stream(seed, n, 7);
    const MatrixPoint x0 = generic_point(shape, rng);
    double worst = 0;
    for (const auto& spec : all_minors(shape, std::min(n, 2))) {
      FlowOptions o;
      o.arclength = 2;
      const auto traj = numeric_flow(RationalFn(minor(spec, shape)), x0, o);
      worst = std::max(worst, cross_validate(minor_flow_closed(spec, x0), traj).max_deviation);
    }
    return check("", worst < CrossValidation::kTolerance, worst, CrossValidation::kTolerance, "minors r <= 2, |t| <= 2");
  });
  tasks.emplace_back(tag("flows.minor_degree_bounds", n), [=] {
    auto rng = stream(seed, n, 8);
    const MatrixPoint x0 = generic_point(shape, rng);
    int excess = 0;
    for (const auto& spec : all_minors(shape, std::min(n, 2))) {
      const DegreeReport d = degree_report(minor_flow_closed(spec, x0));
      const int r = spec.size();
      excess = std::max({excess, d.max_polynomial_degree - (2 * r - 1), d.max_exponential_degree - (2 * r - 2)});
    }
    return check("", excess <= 0, excess, 0, "deg p <= 2r-1, deg p_a <= 2r-2 (excess shown)");
  });
  tasks.emplace_back(tag("flows.minor_conservation", n), [=] {
    auto rng = stream(seed, n, 9);
    const MatrixPoint x0 = generic_point(shape, rng);
    const std::vector<cplx> times = {0.5, cplx(0, 1), cplx(-1, 0.5), 2.0};
    double worst = 0;
    for (const auto& spec : all_minors(shape, std::min(n, 2))) {
      const RationalFn h(minor(spec, shape));
      const ClosedFlow flow = minor_flow_closed(spec, x0);
      worst = std::max(worst, conservation_error(flow, std::span(&h, 1), times));
      worst = std::max(worst, ode_residual(flow, h, times));
    }
    return check("", worst < 1e-8, worst, 1e-8, "minor value and ODE residual along closed flows");
  });
  struct GZRun {
    double cross = 0, conservation = 0;
    int shape_excess = 0, skipped = 0, zeros = 0;
    bool discrete = true;
    double separation = 10;  // diameter of the probed disk when < 2 zeros
  };
  auto gz_run = [=] {
    auto rng = stream(seed, n, 10);
    // Growth rates scale like 1/Delta'(X0); closer starts leave double
    // precision unable to resolve conservation at 1e-8.
    const MatrixPoint x0 = generic_point(shape, rng, 0.1);
    const GZSystem sys = gz_system(n);
    const SingularLocus locus(n);
    const std::vector<cplx> times = {0.25, cplx(0, 0.5), cplx(-0.5, 0.25)};
    GZRun run;
    for (const auto& idx : gz_indices(n)) {
      const ClosedFlow flow = gz_flow_closed(idx, x0);
      const DegreeReport d = degree_report(flow);
      run.shape_excess = std::max({run.shape_excess, d.max_polynomial_degree - 2, d.max_exponential_degree - 1});
      run.conservation = std::max(run.conservation, conservation_error(flow, sys.hams, times));
      FlowOptions o;
      o.arclength = 1;
      o.theta = 0.3;
      o.locus_distance = [&locus](std::span<const cplx> x) { return locus.distance(x); };
      try {
        run.cross = std::max(run.cross, cross_validate(flow, numeric_flow(gz_hamiltonian(n, idx), x0, o)).max_deviation);
      } catch (const SingularityApproached&) {
        ++run.skipped;
      }
      const DiscretenessReport probe = discreteness_probe(flow, locus);
      run.discrete = run.discrete && probe.passed();
      for (const auto& p : probe.probes) {
        run.zeros += static_cast<int>(p.zeros.size());
        run.separation = std::min(run.separation, p.min_separation);
      }
    }
    return run;
  };
  tasks.emplace_back(tag("flows.gz_cross_validation", n), [=] {
    const GZRun run = gz_run();
    return check("", run.cross < CrossValidation::kTolerance, run.cross, CrossValidation::kTolerance,
                 "all GZ Hamiltonians, |t| <= 1" +
                     (run.skipped ? "; arcs stopped near D_n: " + std::to_string(run.skipped) : std::string()));
  });
  tasks.emplace_back(tag("flows.gz_conservation", n), [=] {
    const GZRun run = gz_run();
    return check("", run.conservation < 1e-8, run.conservation, 1e-8, "whole GZ family along every GZ flow");
  });
  tasks.emplace_back(tag("flows.gz_entry_shape", n), [=] {
    const GZRun run = gz_run();
    return check("", run.shape_excess <= 0, run.shape_excess, 0,
                 "polynomial tail <= 2, exponential coefficients <= 1 (excess shown)");
  });
  tasks.emplace_back(tag("flows.gz_discreteness", n), [=] {
    const GZRun run = gz_run();
    return check("", run.discrete, run.separation, DiscretenessReport::kIsolation,
                 std::to_string(run.zeros) + " zeros of Delta' o gamma on |t| <= 5; measured = min separation");
  });
}

}  // namespace

std::vector<CheckResult> run_pool(const std::vector<std::pair<std::string, CheckTask>>& tasks, unsigned jobs) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, std::max<std::size_t>(1, tasks.size()));
  std::vector<CheckResult> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < tasks.size();) {
      const auto start = Clock::now();
      CheckResult r;
      try {
        r = tasks[i].second();
      } catch (const std::exception& e) {
        r = check("", false, 0, 0, std::string("exception: ") + e.what());
      }
      r.name = tasks[i].first;
      r.wall_seconds = seconds_since(start);
      results[i] = std::move(r);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return results;
}

VerificationReport run_suite(const std::string& suite, const SuiteOptions& options) {
  using Builder = void (*)(int, std::uint64_t, std::vector<std::pair<std::string, CheckTask>>&);
  const std::vector<std::pair<std::string, Builder>> known = {
      {"algebra", algebra_checks}, {"kz", kz_checks}, {"gz", gz_checks}, {"flows", flow_checks}};
  std::vector<std::pair<std::string, CheckTask>> tasks;
  bool matched = false;
  for (const auto& [name, build] : known) {
    if (suite != "all" && suite != name) continue;
    matched = true;
    for (int n : options.ns) {
      if (n < 1 || n > 5) throw SizeGuard("verify: n must lie in [1, 5]");
      if (name == "kz" && n < 2) continue;
      build(n, options.seed, tasks);
    }
  }
  if (!matched) throw Error("unknown suite '" + suite + "' (algebra, kz, gz, flows, all)");

  VerificationReport report;
  report.suite = suite;
  report.ns = options.ns;
  report.seed = options.seed;
  const auto start = Clock::now();
  report.checks = run_pool(tasks, options.jobs);
  report.wall_seconds = seconds_since(start);
  return report;
}

}  // namespace detflow
