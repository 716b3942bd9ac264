#include "detflow/flows/closed_flow.hpp"

namespace detflow {

MatrixPoint ClosedFlow::evaluate(cplx t) const {
  std::vector<cplx> values(entries.size());
  for (std::size_t v = 0; v < entries.size(); ++v) values[v] = entries[v](t);
  return MatrixPoint(shape, std::move(values));
}

std::vector<cplx> ClosedFlow::derivative(cplx t) const {
  std::vector<cplx> out(entries.size());
  for (std::size_t v = 0; v < entries.size(); ++v) out[v] = entries[v].derivative()(t);
  return out;
}

json closed_flow_to_json(const ClosedFlow& flow) {
  json rows = json::array();
  for (int i = 1; i <= flow.shape.rows; ++i) {
    json row = json::array();
    for (int j = 1; j <= flow.shape.cols; ++j) row.push_back(qe_to_json(flow.entry(i, j)));
    rows.push_back(std::move(row));
  }
  return {{"shape", {flow.shape.rows, flow.shape.cols}},
          {"hamiltonian", flow.hamiltonian},
          {"x0", point_to_json(flow.x0)},
          {"stage", flow.stage},
          {"entries", std::move(rows)}};
}

QEFun substitute(const Poly& p, const std::vector<QEFun>& entries) {
  return p.evaluate_in<QEFun>([&](int var) { return entries[var]; },
                              [](const GaussRat& c) { return QEFun::constant(c.to_complex()); }, QEFun());
}

}  // namespace detflow
