// cournot-graph: simulate, analyse and sweep Cournot supply-graph scenarios,
// and run prisoner's dilemma cooperation on player graphs.
//
// Exit codes: 0 success, 1 command-line usage, 2 scenario or input error,
// 3 numerical failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cournot/dynamics.hpp"
#include "cournot/pd.hpp"
#include "cournot/scenario.hpp"
#include "cournot/stability.hpp"

namespace {

constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw cournot::InvalidArgument("cannot open output file " + path);
  out << contents;
  if (!out) throw cournot::InvalidArgument("failed writing output file " + path);
}

std::vector<std::string> names_for(const cournot::AffineSystem& sys) {
  return cournot::variable_names(sys.variable_order);
}

struct SimulateArgs {
  std::string scenario;
  double t_end = 200.0;
  double dt = 0.01;
  std::string method = "rk4";
  std::size_t thin = 10;
  std::string out;
};

int run_simulate(const SimulateArgs& a) {
  const auto scenario = cournot::load_scenario(a.scenario);
  const auto sys = cournot::scenario_system(scenario);
  const auto method = cournot::parse_method(a.method);
  const cournot::VectorField field = [&sys](const cournot::FlowVector& q) { return sys.rate(q); };
  const auto names = names_for(sys);

  cournot::Trajectory traj;
  bool blew_up = false;
  try {
    traj = cournot::integrate(field, cournot::scenario_initial_state(scenario), a.t_end, a.dt, method);
  } catch (const cournot::IntegrationError& e) {
    std::cerr << "integration stopped: " << e.what() << "\n";
    traj = e.partial();
    blew_up = true;
  }
  write_file(a.out, cournot::write_trajectory(traj, names, a.thin));

  std::cerr << "steps: " << traj.size() - 1 << ", method: " << cournot::to_string(method)
            << ", dt: " << a.dt << "\n";
  try {
    const auto q_star = cournot::equilibrium(sys);
    const auto v = cournot::classify(traj, field, q_star, cournot::kDefaultConvergenceTolerance, blew_up);
    std::cerr << "long-run: " << cournot::to_string(v.kind)
              << " (distance to equilibrium " << v.initial_distance << " -> " << v.final_distance
              << ", field norm " << v.final_field_norm << ")\n";
    if (v.negative_excursion) std::cerr << "note: some flows went negative\n";
  } catch (const cournot::NoUniqueEquilibrium& e) {
    std::cerr << "long-run: not classified (" << e.what() << ")\n";
  }
  return blew_up ? kExitNumerical : 0;
}

int run_equilibrium(const std::string& path) {
  const auto scenario = cournot::load_scenario(path);
  const auto sys = cournot::scenario_system(scenario);
  const auto q = cournot::equilibrium(sys);
  const auto names = names_for(sys);
  for (Eigen::Index k = 0; k < q.size(); ++k) {
    std::cout << names[static_cast<std::size_t>(k)] << " = " << cournot::format_number(q(k)) << "\n";
  }
  return 0;
}

int run_stability(const std::string& path) {
  const auto scenario = cournot::load_scenario(path);
  std::cout << cournot::render_stability_report(cournot::scenario_stability(scenario));
  return 0;
}

int run_pd(const std::string& path, const std::string& out) {
  const auto scenario = cournot::load_scenario(path);
  const auto* pd_scenario = std::get_if<cournot::PDScenario>(&scenario);
  if (pd_scenario == nullptr) throw cournot::InvalidArgument("pd needs a [pd] scenario");
  namespace pd = cournot::pd;

  const auto graph = pd_scenario->graph.build();
  const auto fractions = pd::run_spatial(graph, pd_scenario->init, pd_scenario->payoff, pd_scenario->steps);
  write_file(out, cournot::write_pd_series(fractions));

  const auto& m = pd_scenario->payoff;
  std::cout << "players: " << graph.size() << ", edges: " << graph.edge_count() << "\n";
  std::cout << "dominant strategy: " << pd::to_string(pd::dominant_strategy(m.values())) << "\n";
  std::cout << "minimum side payment: " << cournot::format_number(pd::min_side_payment(m)) << "\n";
  if (pd_scenario->side_payment) {
    const auto sp = pd::apply_side_payment(m, *pd_scenario->side_payment);
    std::cout << "side payment: " << cournot::format_number(sp.sigma)
              << " (producer and end user pay " << cournot::format_number(sp.payer_share)
              << " each)\n";
    std::cout << "transit dominant strategy: "
              << pd::to_string(pd::dominant_strategy(sp.transit_view)) << "\n";
  }
  std::cout << "final cooperation fraction: " << cournot::format_number(fractions.back()) << "\n";
  return 0;
}

struct SweepArgs {
  std::string scenario;
  std::string param;
  double from = 0.0;
  double to = 0.0;
  int points = 0;
  std::string out;
};

int run_sweep(const SweepArgs& a) {
  const auto scenario = cournot::load_scenario(a.scenario);
  const auto* canonical = std::get_if<cournot::CanonicalScenario>(&scenario);
  if (canonical == nullptr) throw cournot::InvalidArgument("sweep needs a [canonical] scenario");
  const int parameter = cournot::parse_parameter_name(a.param);
  const auto points = cournot::sweep(*canonical, parameter, a.from, a.to, a.points);
  write_file(a.out, cournot::write_sweep(points));
  for (const auto& p : points) {
    if (!p.error.empty()) std::cerr << a.param << " = " << p.value << ": " << p.error << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cournot supply-graph dynamics and spatial prisoner's dilemma"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Integrate a scenario and write a trajectory CSV");
  simulate->add_option("--scenario", sim.scenario, "Scenario file")->required();
  simulate->add_option("--t-end", sim.t_end, "Final time")->capture_default_str();
  simulate->add_option("--dt", sim.dt, "Step size")->capture_default_str();
  simulate->add_option("--method", sim.method, "rk4 or euler")
      ->check(CLI::IsMember({"rk4", "euler"}))
      ->capture_default_str();
  simulate->add_option("--thin", sim.thin, "Keep every k-th step")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  simulate->add_option("--out", sim.out, "Output CSV")->required();

  std::string equilibrium_path;
  auto* equilibrium = app.add_subcommand("equilibrium", "Print the equilibrium flows");
  equilibrium->add_option("--scenario", equilibrium_path, "Scenario file")
      ->required();

  std::string stability_path;
  auto* stability = app.add_subcommand("stability", "Print the stability report");
  stability->add_option("--scenario", stability_path, "Scenario file")
      ->required();

  std::string pd_path;
  std::string pd_out;
  auto* pd_cmd = app.add_subcommand("pd", "Run imitation dynamics on a player graph");
  pd_cmd->add_option("--scenario", pd_path, "Scenario file")->required();
  pd_cmd->add_option("--out", pd_out, "Output CSV")->required();

  SweepArgs sw;
  auto* sweep = app.add_subcommand("sweep", "Stability verdicts over one canonical parameter");
  sweep->add_option("--scenario", sw.scenario, "Scenario file")->required();
  sweep->add_option("--param", sw.param, "r1..r5")->required();
  sweep->add_option("--from", sw.from, "Grid start")->required();
  sweep->add_option("--to", sw.to, "Grid end")->required();
  sweep->add_option("--points", sw.points, "Grid size (>= 2)")->required();
  sweep->add_option("--out", sw.out, "Output CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*simulate) return run_simulate(sim);
    if (*equilibrium) return run_equilibrium(equilibrium_path);
    if (*stability) return run_stability(stability_path);
    if (*pd_cmd) return run_pd(pd_path, pd_out);
    if (*sweep) return run_sweep(sw);
  } catch (const cournot::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const cournot::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return EXIT_FAILURE;
}
