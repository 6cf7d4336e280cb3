#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace cournot::pd {

enum class Strategy : std::uint8_t { Cooperate, Defect };

// Row player's payoffs for (C,C), (C,D), (D,C), (D,D). No ordering imposed.
struct PayoffValues {
  double R = 0.0;
  double S = 0.0;
  double T = 0.0;
  double U = 0.0;

  friend bool operator==(const PayoffValues&, const PayoffValues&) = default;
};

// Symmetric prisoner's dilemma stage game, T > R > U > S.
class PDMatrix {
 public:
  PDMatrix(double R, double S, double T, double U);

  double R() const { return v_.R; }
  double S() const { return v_.S; }
  double T() const { return v_.T; }
  double U() const { return v_.U; }
  const PayoffValues& values() const { return v_; }

 private:
  PayoffValues v_;
};

// (payoff to a, payoff to b).
std::pair<double, double> payoffs(const PayoffValues& m, Strategy a, Strategy b);
std::pair<double, double> payoffs(const PDMatrix& m, Strategy a, Strategy b);

enum class Dominance { Cooperate, Defect, None };

std::string to_string(Dominance d);

// Strict dominance for the row player.
Dominance dominant_strategy(const PayoffValues& m);

struct SidePayment {
  PayoffValues transit_view;  // cooperate row raised by sigma
  double sigma = 0.0;
  double payer_share = 0.0;   // paid by each of producer and end user, sigma / 2
};

SidePayment apply_side_payment(const PDMatrix& m, double sigma);

// max(T - R, U - S): any payment above it makes cooperation strictly dominant
// for the transit country.
double min_side_payment(const PDMatrix& m);

// Simple undirected graph over players 0..n-1.
class PlayerGraph {
 public:
  static PlayerGraph complete(int n);
  static PlayerGraph cycle(int n);
  // w x h lattice with periodic boundaries and von Neumann neighborhood.
  static PlayerGraph torus(int width, int height);
  static PlayerGraph from_edges(int n, const std::vector<std::pair<int, int>>& edges);

  int size() const { return static_cast<int>(adjacency_.size()); }
  std::span<const int> neighbors(int player) const { return adjacency_.at(player); }
  std::size_t edge_count() const;

 private:
  explicit PlayerGraph(int n) : adjacency_(static_cast<std::size_t>(n)) {}
  void connect(int a, int b);

  std::vector<std::vector<int>> adjacency_;
};

struct PopulationState {
  PlayerGraph graph;
  std::vector<Strategy> strategies;
};

struct InitSpec {
  enum class Kind { Random, AllC, AllD, SingleDefector };
  Kind kind = Kind::AllD;
  double fraction = 0.0;   // Random: probability that a player starts as C
  std::uint64_t seed = 0;  // Random only
};

// The single defector sits at index n / 2 (the lattice centre for odd torus sizes).
std::vector<Strategy> initial_strategies(const InitSpec& init, int players);

double cooperation_fraction(std::span<const Strategy> strategies);

// Per-player sum of stage payoffs against every neighbour.
std::vector<double> scores(const PlayerGraph& graph, std::span<const Strategy> strategies,
                           const PDMatrix& m);

// Synchronous imitation of the best scorer in the closed neighbourhood.
// Ties keep the player's own strategy, then go to the lowest index.
std::vector<Strategy> next_strategies(const PlayerGraph& graph,
                                      std::span<const Strategy> strategies, const PDMatrix& m);

PopulationState imitation_step(const PopulationState& state, const PDMatrix& m);

// Cooperation fraction after each step, starting with the initial state;
// length steps + 1.
std::vector<double> run_spatial(const PlayerGraph& graph, std::vector<Strategy> init,
                                const PDMatrix& m, int steps);
std::vector<double> run_spatial(const PlayerGraph& graph, const InitSpec& init, const PDMatrix& m,
                                int steps);

}  // namespace cournot::pd
