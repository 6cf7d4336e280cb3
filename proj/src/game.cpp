#include "cournot/game.hpp"

#include <cmath>
#include <string>

#include "cournot/errors.hpp"

namespace cournot {

namespace {

std::vector<Edge> conformant_order(const NetworkSpec& spec, const FlowVector& q) {
  require_valid(spec);
  auto order = canonical_edge_order(spec);
  if (q.size() != static_cast<Eigen::Index>(order.size())) {
    throw InvalidArgument("flow vector has " + std::to_string(q.size()) + " entries, network has " +
                          std::to_string(order.size()) + " edges");
  }
  if (!q.allFinite()) throw InvalidArgument("flow vector has non-finite entries");
  return order;
}

void check_firm(const NetworkSpec& spec, int firm) {
  if (firm < 0 || firm >= spec.firm_count) {
    throw InvalidArgument("unknown firm " + std::to_string(firm + 1));
  }
}

void check_market(const NetworkSpec& spec, int market) {
  if (market < 0 || market >= spec.market_count) {
    throw InvalidArgument("unknown market " + std::to_string(market + 1));
  }
}

double sum_where(const std::vector<Edge>& order, const FlowVector& q, auto&& pred) {
  double total = 0.0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (pred(order[k])) total += q(static_cast<Eigen::Index>(k));
  }
  return total;
}

}  // namespace

double firm_supply(const NetworkSpec& spec, const FlowVector& q, int firm) {
  check_firm(spec, firm);
  const auto order = conformant_order(spec, q);
  return sum_where(order, q, [firm](const Edge& e) { return e.firm == firm; });
}

double market_supply(const NetworkSpec& spec, const FlowVector& q, int market) {
  check_market(spec, market);
  const auto order = conformant_order(spec, q);
  return sum_where(order, q, [market](const Edge& e) { return e.market == market; });
}

double profit(const NetworkSpec& spec, const FlowVector& q, int firm) {
  check_firm(spec, firm);
  const auto order = conformant_order(spec, q);
  const double s = sum_where(order, q, [firm](const Edge& e) { return e.firm == firm; });
  double revenue = 0.0;
  double congestion = 0.0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const Edge e = order[k];
    if (e.firm != firm) continue;
    const double qij = q(static_cast<Eigen::Index>(k));
    const double c = sum_where(order, q, [&](const Edge& o) { return o.market == e.market; });
    revenue += spec.alpha[e.market] * qij;
    congestion += spec.beta[e.market] * qij * c;
  }
  return revenue - spec.gamma[firm] * s * s / 2.0 - congestion;
}

double marginal_profit(const NetworkSpec& spec, const FlowVector& q, int market, int firm) {
  check_market(spec, market);
  check_firm(spec, firm);
  const auto order = conformant_order(spec, q);
  const auto pos = edge_position(order, Edge{market, firm});
  if (!pos) {
    throw InvalidArgument("no edge " + std::to_string(market + 1) + ":" + std::to_string(firm + 1));
  }
  const double s = sum_where(order, q, [firm](const Edge& e) { return e.firm == firm; });
  const double c = sum_where(order, q, [market](const Edge& e) { return e.market == market; });
  const double beta = spec.beta[market];
  return spec.alpha[market] - spec.gamma[firm] * s - beta * q(*pos) - beta * c;
}

FlowVector vector_field(const NetworkSpec& spec, const FlowVector& q) {
  const auto order = conformant_order(spec, q);
  FlowVector out(q.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    const Edge e = order[k];
    out(static_cast<Eigen::Index>(k)) =
        spec.speed_of(e.firm) * marginal_profit(spec, q, e.market, e.firm);
  }
  return out;
}

}  // namespace cournot
