#pragma once

#include "detflow/flows/closed_flow.hpp"
#include "detflow/poisson/minor.hpp"

namespace detflow {

/// Closed-form flow of h = Delta_{I,J} from X0.
///
/// Stage 1: k in I and l in J, constant.
/// Stage 2: exactly one of k in I, l in J. Each row k outside I (resp.
///   column l outside J) solves x' = C x on the entries meeting J (resp. I)
///   with C constant, via the Putzer exponential.
/// Stage 3: k outside I and l outside J, integrating the minor bracket
///   with stage 1-2 entries substituted.
/// The linear structure of each stage is checked on the exact bracket
/// polynomials; a violation throws Error.
ClosedFlow minor_flow_closed(const MinorSpec& spec, const MatrixPoint& x0);

}  // namespace detflow
