#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "cournot/dynamics.hpp"
#include "cournot/errors.hpp"
#include "cournot/network.hpp"
#include "cournot/pd.hpp"
#include "cournot/stability.hpp"

namespace cournot {

// Scenario files are UTF-8 text with one section header, `[network]`,
// `[canonical]` or `[pd]`, followed by `key = value` lines. `#` starts a
// comment and lists are comma-separated. Indices are 1-based.

struct NetworkScenario {
  NetworkSpec spec;
  FlowVector q0;  // canonical edge order
};

struct CanonicalScenario {
  CanonicalR5 r;
  std::array<double, 3> q0{};  // (q11, q22, q21)
};

struct GraphSpec {
  enum class Kind { Complete, Cycle, Torus, Edges };
  Kind kind = Kind::Complete;
  int players = 0;  // Complete, Cycle, Edges
  int width = 0;    // Torus
  int height = 0;   // Torus
  std::vector<std::pair<int, int>> edges;  // 0-based, Edges only

  pd::PlayerGraph build() const;
};

struct PDScenario {
  pd::PDMatrix payoff;
  GraphSpec graph;
  pd::InitSpec init;
  int steps = 0;
  std::optional<double> side_payment;
};

using Scenario = std::variant<NetworkScenario, CanonicalScenario, PDScenario>;

class ParseError : public InvalidArgument {
 public:
  ParseError(int line, const std::string& message);
  int line() const noexcept { return line_; }

 private:
  int line_;
};

Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);

// Canonical text form: fixed key order, ", " list separators, shortest
// round-trip numbers, no comments.
std::string render_scenario(const Scenario& scenario);

// Drops comments and blank lines and trims whitespace, leaving the lines a
// canonical rendering would produce for a file already in canonical layout.
std::string strip_comments(std::string_view text);

// Shortest decimal that reads back to the same double.
std::string format_number(double value);

std::string write_trajectory(const Trajectory& trajectory, const std::vector<std::string>& names,
                             std::size_t thin = 10);

std::string render_stability_report(const StabilityReport& report);

// Affine dynamics and variable names behind a Cournot scenario. Throws
// InvalidArgument for PD scenarios.
AffineSystem scenario_system(const Scenario& scenario);
FlowVector scenario_initial_state(const Scenario& scenario);
StabilityReport scenario_stability(const Scenario& scenario);

struct SweepPoint {
  double value = 0.0;
  std::optional<Verdict> verdict;  // empty when the point failed
  double eigen_margin = 0.0;
  std::string error;
};

// "r1".."r5" to 0..4.
int parse_parameter_name(std::string_view name);

// Uniform grid of `points` values over [from, to] for one canonical
// parameter. Failing points are recorded and the sweep continues.
std::vector<SweepPoint> sweep(const CanonicalScenario& scenario, int parameter, double from,
                              double to, int points);

std::string write_sweep(const std::vector<SweepPoint>& points);
std::string write_pd_series(const std::vector<double>& fractions);

}  // namespace cournot
