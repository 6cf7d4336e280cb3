#include "cournot/network.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "cournot/errors.hpp"

namespace cournot {

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& item : items) {
    if (!out.empty()) out += "; ";
    out += item;
  }
  return out;
}

void check_positive(const std::vector<double>& values, const char* name, int expected,
                    std::vector<std::string>& out) {
  if (static_cast<int>(values.size()) != expected) {
    std::ostringstream msg;
    msg << name << " has " << values.size() << " values, expected " << expected;
    out.push_back(msg.str());
    return;
  }
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!(std::isfinite(values[k]) && values[k] > 0.0)) {
      std::ostringstream msg;
      msg << name << "[" << k + 1 << "] must be positive (got " << values[k] << ")";
      out.push_back(msg.str());
    }
  }
}

}  // namespace

InvalidNetwork::InvalidNetwork(std::vector<std::string> violations)
    : InvalidArgument("invalid network: " + join(violations)), violations_(std::move(violations)) {}

std::vector<std::string> validate(const NetworkSpec& spec) {
  std::vector<std::string> out;
  if (spec.market_count <= 0) out.push_back("markets must be a positive integer");
  if (spec.firm_count <= 0) out.push_back("firms must be a positive integer");
  if (!out.empty()) return out;

  check_positive(spec.alpha, "alpha", spec.market_count, out);
  check_positive(spec.beta, "beta", spec.market_count, out);
  check_positive(spec.gamma, "gamma", spec.firm_count, out);
  if (!spec.speed.empty()) check_positive(spec.speed, "speed", spec.firm_count, out);

  std::vector<bool> market_used(spec.market_count, false);
  std::vector<bool> firm_used(spec.firm_count, false);
  std::set<Edge> seen;
  for (const Edge& e : spec.edges) {
    const bool market_ok = e.market >= 0 && e.market < spec.market_count;
    const bool firm_ok = e.firm >= 0 && e.firm < spec.firm_count;
    if (!market_ok || !firm_ok) {
      std::ostringstream msg;
      msg << "edge " << e.market + 1 << ":" << e.firm + 1 << " is out of range";
      out.push_back(msg.str());
      continue;
    }
    if (!seen.insert(e).second) {
      std::ostringstream msg;
      msg << "edge " << e.market + 1 << ":" << e.firm + 1 << " is duplicated";
      out.push_back(msg.str());
    }
    market_used[e.market] = true;
    firm_used[e.firm] = true;
  }
  for (int i = 0; i < spec.market_count; ++i) {
    if (!market_used[i]) out.push_back("market " + std::to_string(i + 1) + " has no edge");
  }
  for (int j = 0; j < spec.firm_count; ++j) {
    if (!firm_used[j]) out.push_back("firm " + std::to_string(j + 1) + " has no edge");
  }
  return out;
}

void require_valid(const NetworkSpec& spec) {
  auto violations = validate(spec);
  if (!violations.empty()) throw InvalidNetwork(std::move(violations));
}

std::vector<Edge> canonical_edge_order(const NetworkSpec& spec) {
  std::vector<Edge> order = spec.edges;
  std::sort(order.begin(), order.end());
  return order;
}

std::optional<Eigen::Index> edge_position(const std::vector<Edge>& order, Edge edge) {
  auto it = std::find(order.begin(), order.end(), edge);
  if (it == order.end()) return std::nullopt;
  return static_cast<Eigen::Index>(it - order.begin());
}

NetworkSpec two_firms_two_markets(double alpha1, double alpha2, double beta1, double beta2,
                                  double gamma1, double gamma2) {
  for (double v : {alpha1, alpha2, beta1, beta2, gamma1, gamma2}) {
    if (!(std::isfinite(v) && v > 0.0)) {
      throw InvalidArgument("two_firms_two_markets: all constants must be positive");
    }
  }
  NetworkSpec spec;
  spec.market_count = 2;
  spec.firm_count = 2;
  spec.edges = {{0, 0}, {1, 0}, {1, 1}};
  spec.alpha = {alpha1, alpha2};
  spec.beta = {beta1, beta2};
  spec.gamma = {gamma1, gamma2};
  spec.speed = {1.0, 1.0};
  return spec;
}

AffineSystem to_affine(const NetworkSpec& spec) {
  require_valid(spec);
  AffineSystem sys;
  sys.variable_order = canonical_edge_order(spec);
  const auto n = static_cast<Eigen::Index>(sys.variable_order.size());
  sys.constant.resize(n);
  sys.matrix = Eigen::MatrixXd::Zero(n, n);

  for (Eigen::Index row = 0; row < n; ++row) {
    const Edge e = sys.variable_order[row];
    const double b = spec.speed_of(e.firm);
    const double alpha = spec.alpha[e.market];
    const double beta = spec.beta[e.market];
    const double gamma = spec.gamma[e.firm];
    sys.constant(row) = b * alpha;
    for (Eigen::Index col = 0; col < n; ++col) {
      const Edge other = sys.variable_order[col];
      if (col == row) {
        sys.matrix(row, col) = b * (gamma + 2.0 * beta);
      } else if (other.firm == e.firm) {
        sys.matrix(row, col) = b * gamma;
      } else if (other.market == e.market) {
        sys.matrix(row, col) = b * beta;
      }
    }
  }
  return sys;
}

std::vector<std::string> variable_names(const std::vector<Edge>& order) {
  const bool wide = std::any_of(order.begin(), order.end(),
                                [](const Edge& e) { return e.market >= 9 || e.firm >= 9; });
  std::vector<std::string> names;
  names.reserve(order.size());
  for (const Edge& e : order) {
    names.push_back("q" + std::to_string(e.market + 1) + (wide ? "_" : "") +
                    std::to_string(e.firm + 1));
  }
  return names;
}

}  // namespace cournot
