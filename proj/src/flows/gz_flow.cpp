#include "detflow/flows/gz_flow.hpp"

#include <algorithm>

#include "detflow/errors.hpp"
#include "detflow/poisson/bracket.hpp"

namespace detflow {

namespace {

struct EntryRhs {
  Poly p1;  // coefficient of x_ij
  Poly p0;  // remainder, free of x_ij
};

// {x_v, N/D} = ({x_v, N} D - N {x_v, D}) / D^2, split as P1 x_v + P0.
// Throws when x_v enters nonlinearly.
EntryRhs entry_rhs(const RationalFn& h, int v) {
  const Shape shape = h.shape();
  const Poly x = Poly::from_var(shape, v);
  Poly p = bracket(x, h.num()) * h.den();
  if (!h.den().is_constant()) p -= h.num() * bracket(x, h.den());
  if (p.degree_in(v) > 1) throw Error("ratio flow: bracket is nonlinear in its own coordinate");
  return {p.diff_var(v), p.drop_var(v)};
}

bool only_in(const Poly& p, const std::vector<char>& allowed) {
  for (int u : p.variables())
    if (!allowed[u]) return false;
  return true;
}

void check_not_singular(const RationalFn& h, const MatrixPoint& x0) {
  if (h.is_polynomial()) return;
  const cplx d = h.den().evaluate(x0.values());
  if (std::abs(d) < kSingularTolerance * (1 + std::pow(x0.max_abs(), h.den().total_degree())))
    throw OnSingularLocus("closed flow: denominator vanishes at X0");
}

}  // namespace

int gz_entry_case(GZIndex index, int i, int j) {
  const int l = index.l, k = index.k;
  const bool ri = i <= l, cj = j <= l;
  if (ri && cj) return 1;
  if (!ri && !cj) return 5;
  if (index.is_determinant()) return 2;
  if (ri) return i <= k ? 2 : 3;     // j > l
  return j <= l - k ? 2 : 4;          // i > l
}

ClosedFlow ratio_flow_closed(const RationalFn& h, const MatrixPoint& x0, const std::vector<int>& order) {
  const Shape shape = x0.shape();
  if (h.shape() != shape) throw ShapeMismatch("ratio flow: Hamiltonian and point shapes differ");
  check_not_singular(h, x0);

  const std::size_t dim = shape.size();
  std::vector<EntryRhs> rhs;
  rhs.reserve(dim);
  for (std::size_t v = 0; v < dim; ++v) rhs.push_back(entry_rhs(h, static_cast<int>(v)));

  // Constant coordinates: zero bracket.
  std::vector<char> constant(dim, 0);
  for (std::size_t v = 0; v < dim; ++v) constant[v] = rhs[v].p1.is_zero() && rhs[v].p0.is_zero();
  if (!only_in(h.den(), constant)) throw Error("ratio flow: denominator is not constant along the flow");

  const cplx d0 = h.den().evaluate(x0.values());
  const cplx q0 = d0 * d0;

  ClosedFlow flow;
  flow.shape = shape;
  flow.x0 = x0;
  flow.hamiltonian = h.render();
  flow.entries.resize(dim);
  flow.stage.assign(dim, 0);
  std::vector<char> solved(dim, 0);
  for (std::size_t v = 0; v < dim; ++v)
    if (constant[v]) {
      flow.entries[v] = QEFun::constant(x0.values()[v]);
      flow.stage[v] = 1;
      solved[v] = 1;
    }

  for (int v : order) {
    if (solved[v]) continue;
    const EntryRhs& e = rhs[v];
    if (!only_in(e.p1, constant) || !only_in(e.p0, solved))
      throw Error("ratio flow: entry x" + std::to_string(shape.row_of(v)) + std::to_string(shape.col_of(v)) +
                  " is not ready in the requested order");
    int stage = 2;
    for (int u : e.p0.variables()) stage = std::max(stage, flow.stage[u] + 1);
    const cplx lambda = e.p1.evaluate(x0.values()) / q0;
    QEFun forcing = substitute(e.p0, flow.entries) * (1.0 / q0);
    QEFun inner = forcing.shifted_exponent(-lambda).antiderivative() + QEFun::constant(x0.values()[v]);
    flow.entries[v] = inner.shifted_exponent(lambda);
    flow.stage[v] = stage;
    solved[v] = 1;
  }
  if (std::find(solved.begin(), solved.end(), 0) != solved.end())
    throw Error("ratio flow: order does not cover every entry");
  return flow;
}

ClosedFlow gz_flow_closed(GZIndex index, const MatrixPoint& x0) {
  const int n = x0.shape().rows;
  if (x0.shape().cols != n) throw ShapeMismatch("gz flow: point must be square");
  if (SingularLocus(n).contains(x0)) throw OnSingularLocus("gz flow: X0 lies on D_" + std::to_string(n));
  const RationalFn h = gz_hamiltonian(n, index);

  std::vector<int> order(n * n);
  for (int v = 0; v < n * n; ++v) order[v] = v;
  const Shape shape = x0.shape();
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return gz_entry_case(index, shape.row_of(a), shape.col_of(a)) <
           gz_entry_case(index, shape.row_of(b), shape.col_of(b));
  });

  ClosedFlow flow = ratio_flow_closed(h, x0, order);
  flow.hamiltonian = index.label();
  for (int v = 0; v < n * n; ++v) flow.stage[v] = gz_entry_case(index, shape.row_of(v), shape.col_of(v));
  return flow;
}

std::vector<int> readiness_order(const RationalFn& h) {
  const std::size_t dim = h.shape().size();
  std::vector<EntryRhs> rhs;
  for (std::size_t v = 0; v < dim; ++v) rhs.push_back(entry_rhs(h, static_cast<int>(v)));
  std::vector<char> constant(dim, 0), solved(dim, 0);
  for (std::size_t v = 0; v < dim; ++v) solved[v] = constant[v] = rhs[v].p1.is_zero() && rhs[v].p0.is_zero();
  std::vector<int> order;
  for (bool progress = true; progress;) {
    std::vector<int> round;
    for (std::size_t v = 0; v < dim; ++v)
      if (!solved[v] && only_in(rhs[v].p1, constant) && only_in(rhs[v].p0, solved)) round.push_back(static_cast<int>(v));
    for (int v : round) solved[v] = 1, order.push_back(v);
    progress = !round.empty();
  }
  return order;
}

ClosedFlow ratio_flow_closed(const RationalFn& h, const MatrixPoint& x0) {
  return ratio_flow_closed(h, x0, readiness_order(h));
}

ClosedFlow gz_flow_closed(const GZSystem& system, std::size_t member, const MatrixPoint& x0) {
  const int n = system.n;
  if (x0.shape() != Shape{n, n}) throw ShapeMismatch("gz flow: point shape does not match the system");
  if (member >= system.hams.size()) throw IndexOutOfRange("gz flow: no such member");
  ClosedFlow flow = ratio_flow_closed(system.hams[member], x0);
  flow.hamiltonian = system.labels[member];
  return flow;
}

}  // namespace detflow
