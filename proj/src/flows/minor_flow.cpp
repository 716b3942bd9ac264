#include "detflow/flows/minor_flow.hpp"

#include <Eigen/Dense>

#include "detflow/errors.hpp"
#include "detflow/quasiexp/putzer.hpp"

namespace detflow {

namespace {

// Solves y' = C y on the coordinate block `vars`, where C[a][b] is the
// coefficient of vars[b] in the bracket of vars[a]. Coefficients may only
// involve stage-1 coordinates.
void solve_linear_block(const std::vector<int>& vars, const MinorSpec& spec, const MatrixPoint& x0,
                        const std::vector<int>& stage, std::vector<QEFun>& entries) {
  const Shape shape = x0.shape();
  const auto r = static_cast<Eigen::Index>(vars.size());
  Eigen::MatrixXcd c(r, r);
  for (Eigen::Index a = 0; a < r; ++a) {
    const Poly rhs = minor_bracket(shape.row_of(vars[a]), shape.col_of(vars[a]), spec, shape);
    Poly rest = rhs;
    for (Eigen::Index b = 0; b < r; ++b) {
      const Poly coeff = rhs.diff_var(vars[b]);
      for (int v : coeff.variables())
        if (stage[v] != 1) throw Error("minor flow: non-constant coefficient in a linear block");
      c(a, b) = coeff.evaluate(x0.values());
      rest = rest.drop_var(vars[b]);
    }
    if (!rest.is_zero()) throw Error("minor flow: inhomogeneous term in a linear block");
  }
  const QEMatrix e = putzer_exp(c);
  for (Eigen::Index a = 0; a < r; ++a) {
    QEFun acc;
    for (Eigen::Index b = 0; b < r; ++b) acc += e[a][b] * x0.values()[vars[b]];
    entries[vars[a]] = std::move(acc);
  }
}

}  // namespace

ClosedFlow minor_flow_closed(const MinorSpec& spec, const MatrixPoint& x0) {
  const Shape shape = x0.shape();
  if (!spec.fits(shape)) throw IndexOutOfRange("minor flow: " + spec.label() + " does not fit " + shape.to_string());

  ClosedFlow flow;
  flow.shape = shape;
  flow.x0 = x0;
  flow.hamiltonian = spec.label();
  flow.entries.resize(shape.size());
  flow.stage.assign(shape.size(), 0);

  for (int i = 1; i <= shape.rows; ++i)
    for (int j = 1; j <= shape.cols; ++j) {
      const int v = shape.var(i, j);
      const bool in_row = spec.has_row(i), in_col = spec.has_col(j);
      flow.stage[v] = in_row && in_col ? 1 : (in_row || in_col) ? 2 : 3;
      if (flow.stage[v] == 1) flow.entries[v] = QEFun::constant(x0.values()[v]);
    }

  for (int i = 1; i <= shape.rows; ++i) {
    if (spec.has_row(i)) continue;
    std::vector<int> vars;
    for (int j : spec.cols()) vars.push_back(shape.var(i, j));
    solve_linear_block(vars, spec, x0, flow.stage, flow.entries);
  }
  for (int j = 1; j <= shape.cols; ++j) {
    if (spec.has_col(j)) continue;
    std::vector<int> vars;
    for (int i : spec.rows()) vars.push_back(shape.var(i, j));
    solve_linear_block(vars, spec, x0, flow.stage, flow.entries);
  }

  for (int i = 1; i <= shape.rows; ++i)
    for (int j = 1; j <= shape.cols; ++j) {
      const int v = shape.var(i, j);
      if (flow.stage[v] != 3) continue;
      const Poly rhs = minor_bracket(i, j, spec, shape);
      for (int u : rhs.variables())
        if (flow.stage[u] == 3) throw Error("minor flow: stage-3 entry depends on another stage-3 entry");
      flow.entries[v] = substitute(rhs, flow.entries).antiderivative() + QEFun::constant(x0.values()[v]);
    }
  return flow;
}

}  // namespace detflow
