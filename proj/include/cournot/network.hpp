#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace cournot {

// One flow variable per edge, ordered by canonical_edge_order().
using FlowVector = Eigen::VectorXd;

// A supply line from firm `firm` into market `market`. Indices are 0-based;
// text formats and messages use 1-based numbering.
struct Edge {
  int market = 0;
  int firm = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Firm-market supply graph with its economic constants.
//
// alpha/beta are indexed by market, gamma/speed by firm. An empty `speed`
// means every adjustment rate is 1.
struct NetworkSpec {
  int market_count = 0;
  int firm_count = 0;
  std::vector<Edge> edges;
  std::vector<double> alpha;
  std::vector<double> beta;
  std::vector<double> gamma;
  std::vector<double> speed;

  double speed_of(int firm) const { return speed.empty() ? 1.0 : speed.at(firm); }
};

// Linear dynamics dq/dt = constant - matrix * q.
struct AffineSystem {
  Eigen::VectorXd constant;
  Eigen::MatrixXd matrix;
  std::vector<Edge> variable_order;

  Eigen::Index dimension() const { return constant.size(); }
  FlowVector rate(const FlowVector& q) const { return constant - matrix * q; }
};

// Empty iff `spec` satisfies every NetworkSpec invariant.
std::vector<std::string> validate(const NetworkSpec& spec);

// Throws InvalidNetwork carrying the violations, if any.
void require_valid(const NetworkSpec& spec);

// Edges sorted by (market, firm). This is the coordinate order of every
// flow vector built from `spec`.
std::vector<Edge> canonical_edge_order(const NetworkSpec& spec);

// Position of `edge` in `order`, if present.
std::optional<Eigen::Index> edge_position(const std::vector<Edge>& order, Edge edge);

// Two markets, two firms; firm 1 supplies both markets, firm 2 only market 2.
// Adjustment rates are 1.
NetworkSpec two_firms_two_markets(double alpha1, double alpha2, double beta1, double beta2,
                                  double gamma1, double gamma2);

AffineSystem to_affine(const NetworkSpec& spec);

// "q21" style names; switches to "q2_1" once any index exceeds 9.
std::vector<std::string> variable_names(const std::vector<Edge>& order);

}  // namespace cournot
