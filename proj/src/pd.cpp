#include "cournot/pd.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "cournot/errors.hpp"

namespace cournot::pd {

PDMatrix::PDMatrix(double R, double S, double T, double U) : v_{R, S, T, U} {
  for (double x : {R, S, T, U}) {
    if (!std::isfinite(x)) throw InvalidArgument("payoff values must be finite");
  }
  if (!(T > R && R > U && U > S)) {
    throw InvalidArgument("payoff must satisfy T > R > U > S");
  }
}

std::pair<double, double> payoffs(const PayoffValues& m, Strategy a, Strategy b) {
  const bool ac = a == Strategy::Cooperate;
  const bool bc = b == Strategy::Cooperate;
  if (ac && bc) return {m.R, m.R};
  if (ac) return {m.S, m.T};
  if (bc) return {m.T, m.S};
  return {m.U, m.U};
}

std::pair<double, double> payoffs(const PDMatrix& m, Strategy a, Strategy b) {
  return payoffs(m.values(), a, b);
}

std::string to_string(Dominance d) {
  switch (d) {
    case Dominance::Cooperate:
      return "C";
    case Dominance::Defect:
      return "D";
    case Dominance::None:
      break;
  }
  return "none";
}

Dominance dominant_strategy(const PayoffValues& m) {
  if (m.T > m.R && m.U > m.S) return Dominance::Defect;
  if (m.R > m.T && m.S > m.U) return Dominance::Cooperate;
  return Dominance::None;
}

SidePayment apply_side_payment(const PDMatrix& m, double sigma) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw InvalidArgument("side payment must be a nonnegative number");
  }
  SidePayment out;
  out.transit_view = m.values();
  out.transit_view.R += sigma;
  out.transit_view.S += sigma;
  out.sigma = sigma;
  out.payer_share = sigma / 2.0;
  return out;
}

double min_side_payment(const PDMatrix& m) { return std::max(m.T() - m.R(), m.U() - m.S()); }

PlayerGraph PlayerGraph::complete(int n) {
  if (n < 1) throw InvalidArgument("complete graph needs at least one player");
  PlayerGraph g(n);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) g.connect(a, b);
  }
  return g;
}

PlayerGraph PlayerGraph::cycle(int n) {
  if (n < 3) throw InvalidArgument("cycle needs at least three players");
  PlayerGraph g(n);
  for (int a = 0; a < n; ++a) g.connect(a, (a + 1) % n);
  return g;
}

PlayerGraph PlayerGraph::torus(int width, int height) {
  if (width < 3 || height < 3) throw InvalidArgument("torus sides must be at least 3");
  PlayerGraph g(width * height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const int here = y * width + x;
      g.connect(here, y * width + (x + 1) % width);
      g.connect(here, ((y + 1) % height) * width + x);
    }
  }
  return g;
}

PlayerGraph PlayerGraph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  if (n < 1) throw InvalidArgument("graph needs at least one player");
  PlayerGraph g(n);
  std::set<std::pair<int, int>> seen;
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n || b >= n) {
      throw InvalidArgument("edge " + std::to_string(a + 1) + "-" + std::to_string(b + 1) +
                            " is out of range");
    }
    if (a == b) throw InvalidArgument("self-loop on player " + std::to_string(a + 1));
    if (!seen.insert(std::minmax(a, b)).second) {
      throw InvalidArgument("duplicate edge " + std::to_string(a + 1) + "-" +
                            std::to_string(b + 1));
    }
    g.connect(a, b);
  }
  return g;
}

std::size_t PlayerGraph::edge_count() const {
  std::size_t total = 0;
  for (const auto& adj : adjacency_) total += adj.size();
  return total / 2;
}

void PlayerGraph::connect(int a, int b) {
  adjacency_[static_cast<std::size_t>(a)].push_back(b);
  adjacency_[static_cast<std::size_t>(b)].push_back(a);
}

std::vector<Strategy> initial_strategies(const InitSpec& init, int players) {
  if (players < 1) throw InvalidArgument("population needs at least one player");
  const auto n = static_cast<std::size_t>(players);
  switch (init.kind) {
    case InitSpec::Kind::AllC:
      return std::vector<Strategy>(n, Strategy::Cooperate);
    case InitSpec::Kind::AllD:
      return std::vector<Strategy>(n, Strategy::Defect);
    case InitSpec::Kind::SingleDefector: {
      std::vector<Strategy> s(n, Strategy::Cooperate);
      s[n / 2] = Strategy::Defect;
      return s;
    }
    case InitSpec::Kind::Random:
      break;
  }
  if (!(init.fraction >= 0.0 && init.fraction <= 1.0)) {
    throw InvalidArgument("cooperator fraction must lie in [0, 1]");
  }
  // mt19937_64 output is fixed by the standard; the uniform draw is built
  // from its top 53 bits so the sequence does not depend on the library.
  std::mt19937_64 engine(init.seed);
  std::vector<Strategy> s(n);
  for (auto& player : s) {
    const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
    player = u < init.fraction ? Strategy::Cooperate : Strategy::Defect;
  }
  return s;
}

double cooperation_fraction(std::span<const Strategy> strategies) {
  if (strategies.empty()) return 0.0;
  const auto c = std::count(strategies.begin(), strategies.end(), Strategy::Cooperate);
  return static_cast<double>(c) / static_cast<double>(strategies.size());
}

std::vector<double> scores(const PlayerGraph& graph, std::span<const Strategy> strategies,
                           const PDMatrix& m) {
  if (static_cast<int>(strategies.size()) != graph.size()) {
    throw InvalidArgument("strategy count does not match the player count");
  }
  std::vector<double> out(strategies.size());
  for (int p = 0; p < graph.size(); ++p) {
    int coop = 0;
    int defect = 0;
    for (int q : graph.neighbors(p)) {
      (strategies[static_cast<std::size_t>(q)] == Strategy::Cooperate ? coop : defect)++;
    }
    // Count-based so that equal neighbourhoods give bit-equal scores.
    const Strategy own = strategies[static_cast<std::size_t>(p)];
    out[static_cast<std::size_t>(p)] = coop * payoffs(m, own, Strategy::Cooperate).first +
                                       defect * payoffs(m, own, Strategy::Defect).first;
  }
  return out;
}

std::vector<Strategy> next_strategies(const PlayerGraph& graph,
                                      std::span<const Strategy> strategies, const PDMatrix& m) {
  const auto score = scores(graph, strategies, m);
  std::vector<Strategy> next(strategies.begin(), strategies.end());
  for (int p = 0; p < graph.size(); ++p) {
    const auto self = static_cast<std::size_t>(p);
    double best = score[self];
    for (int q : graph.neighbors(p)) best = std::max(best, score[static_cast<std::size_t>(q)]);

    bool keep = score[self] == best;
    int lowest = keep ? p : graph.size();
    for (int q : graph.neighbors(p)) {
      const auto k = static_cast<std::size_t>(q);
      if (score[k] != best) continue;
      if (strategies[k] == strategies[self]) keep = true;
      lowest = std::min(lowest, q);
    }
    if (!keep) next[self] = strategies[static_cast<std::size_t>(lowest)];
  }
  return next;
}

PopulationState imitation_step(const PopulationState& state, const PDMatrix& m) {
  return {state.graph, next_strategies(state.graph, state.strategies, m)};
}

std::vector<double> run_spatial(const PlayerGraph& graph, std::vector<Strategy> init,
                                const PDMatrix& m, int steps) {
  if (steps < 0) throw InvalidArgument("steps must be nonnegative");
  if (static_cast<int>(init.size()) != graph.size()) {
    throw InvalidArgument("strategy count does not match the player count");
  }
  std::vector<double> fractions;
  fractions.reserve(static_cast<std::size_t>(steps) + 1);
  fractions.push_back(cooperation_fraction(init));
  for (int k = 0; k < steps; ++k) {
    init = next_strategies(graph, init, m);
    fractions.push_back(cooperation_fraction(init));
  }
  return fractions;
}

std::vector<double> run_spatial(const PlayerGraph& graph, const InitSpec& init, const PDMatrix& m,
                                int steps) {
  return run_spatial(graph, initial_strategies(init, graph.size()), m, steps);
}

}  // namespace cournot::pd
