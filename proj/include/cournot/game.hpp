#pragma once

#include "cournot/network.hpp"

namespace cournot {

// Profit, supply aggregates and the bounded-rationality vector field,
// evaluated edge by edge on the supply graph. Sums only run over edges that
// exist in the graph. Flows are not clamped at zero.
//
// All functions take `q` in canonical edge order and throw InvalidArgument
// for a non-conformant q or an unknown index. Indices are 0-based.

double firm_supply(const NetworkSpec& spec, const FlowVector& q, int firm);
double market_supply(const NetworkSpec& spec, const FlowVector& q, int market);

// sum_i alpha_i q_ij - gamma_j s_j^2 / 2 - sum_i beta_i q_ij c_i
double profit(const NetworkSpec& spec, const FlowVector& q, int firm);

// Partial derivative of firm j's profit with respect to q_ij.
double marginal_profit(const NetworkSpec& spec, const FlowVector& q, int market, int firm);

// dq_ij/dt = b_j * marginal_profit(i, j)
FlowVector vector_field(const NetworkSpec& spec, const FlowVector& q);

}  // namespace cournot
