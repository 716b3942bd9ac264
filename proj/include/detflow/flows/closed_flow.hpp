#pragma once

#include <string>
#include <vector>

#include "detflow/polyalg/json_io.hpp"
#include "detflow/polyalg/matrix_point.hpp"
#include "detflow/quasiexp/qefun.hpp"

namespace detflow {

/// Entrywise quasi-exponential solution gamma(t) of a Hamiltonian flow.
/// Entries are row-major; `stage[v]` records when entry v was solved
/// (1 = constant, larger stages consume earlier ones).
struct ClosedFlow {
  Shape shape;
  std::vector<QEFun> entries;
  std::vector<int> stage;
  std::string hamiltonian;
  MatrixPoint x0;

  const QEFun& entry(int i, int j) const { return entries[shape.var(i, j)]; }
  MatrixPoint evaluate(cplx t) const;
  /// gamma'(t), row-major.
  std::vector<cplx> derivative(cplx t) const;
};

json closed_flow_to_json(const ClosedFlow& flow);

/// p(gamma(t)) as a single quasi-exponential.
QEFun substitute(const Poly& p, const std::vector<QEFun>& entries);

}  // namespace detflow
