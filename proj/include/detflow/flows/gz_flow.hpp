#pragma once

#include "detflow/flows/closed_flow.hpp"
#include "detflow/gz/gz_system.hpp"

namespace detflow {

/// Case (1-5) of entry (i, j) under the flow of the default-family member
/// `index` on M_n:
///   1  i, j <= l
///   2  i <= k < l < j, or j <= l - k < l < i  (for Delta_l: exactly one of i, j > l)
///   3  k < i <= l < j
///   4  l - k < j <= l < i
///   5  i, j > l
int gz_entry_case(GZIndex index, int i, int j);

/// Closed-form flow of a ratio h = N/D (or polynomial h) from X0.
///
/// Entries are solved one at a time: the bracket {x_ij, h} = P / D^2 must
/// have D constant along the flow and P = P1 x_ij + P0 with P1 constant and
/// P0 depending only on already solved entries. Then
///   x_ij(t) = e^{lt} (x_ij(0) + int_0^t e^{-ls} P0(gamma(s)) / D0^2 ds),  l = P1/D0^2.
/// `order` lists entries (row-major indices) in solving order; an entry that
/// is not ready when reached throws Error. Stages record the index of the
/// readiness round in which the entry became solvable.
ClosedFlow ratio_flow_closed(const RationalFn& h, const MatrixPoint& x0, const std::vector<int>& order);

/// Solving order by readiness rounds; entries that never become ready are
/// left out (ratio_flow_closed then throws).
std::vector<int> readiness_order(const RationalFn& h);

/// Closed-form flow of any Hamiltonian of this linear-triangular type
/// (minors, GZ ratios, their pullbacks), in readiness order.
ClosedFlow ratio_flow_closed(const RationalFn& h, const MatrixPoint& x0);

/// Closed-form flow of a default GZ Hamiltonian, solved in case order
/// 1 -> 5; stage[v] holds the case of each entry. Throws OnSingularLocus
/// when X0 lies on D_n.
ClosedFlow gz_flow_closed(GZIndex index, const MatrixPoint& x0);

/// Same for an arbitrary member of a GZ system (any chain); entries are
/// ordered by readiness rounds.
ClosedFlow gz_flow_closed(const GZSystem& system, std::size_t member, const MatrixPoint& x0);

}  // namespace detflow
