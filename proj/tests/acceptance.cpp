// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.
//
//   cournot_acceptance [--cli PATH] [--work DIR] [--only N]
//
// With --cli the determinism criterion runs every CLI command twice and
// compares the files byte for byte; without it only the library writers are
// compared.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cournot/dynamics.hpp"
#include "cournot/game.hpp"
#include "cournot/pd.hpp"
#include "cournot/scenario.hpp"
#include "cournot/stability.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace cournot;
namespace fs = std::filesystem;

namespace {

const CanonicalR5 kStable{0.2, 0.5, 1.5, -0.3, 0.4};
const CanonicalR5 kUnstable{0.01, 0.1, 1.1, -0.3, 0.4};
const Eigen::Vector3d kStart(0.1, 0.2, 0.3);
const Eigen::Vector3d kExpected(1.13636, 0.454545, 0.772727);

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double time_limit;  // seconds, <= 0 for none
  std::function<Outcome()> run;
};

VectorField field_of(const AffineSystem& sys) {
  return [sys](const FlowVector& q) -> FlowVector { return sys.rate(q); };
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

CanonicalR5 random_r(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> pos(0.0, 2.0);
  std::uniform_real_distribution<double> sym(-1.0, 1.0);
  auto positive = [&] {
    double v = 0.0;
    while (v == 0.0) v = pos(rng);
    return v;
  };
  return {positive(), positive(), positive(), sym(rng), sym(rng)};
}

pd::PDMatrix random_pd(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-5.0, 10.0);
  std::array<double, 4> v{};
  do {
    for (double& x : v) x = u(rng);
    std::sort(v.begin(), v.end());
  } while (v[0] == v[1] || v[1] == v[2] || v[2] == v[3]);
  return {v[2], v[0], v[3], v[1]};
}

Outcome stable_equilibrium() {
  const auto q = equilibrium(canonical_affine(kStable));
  const double err = (q - kExpected).cwiseAbs().maxCoeff();
  const auto verdict = analyze(kStable).verdict;
  return {err <= 1e-5 && verdict == Verdict::Stable,
          "max |q - expected| = " + fmt(err) + ", verdict " + std::string(to_string(verdict))};
}

Outcome stable_trajectory() {
  const auto traj = integrate(field_of(canonical_affine(kStable)), kStart, 200.0, 0.01);
  const double err = (traj.final_state() - kExpected).cwiseAbs().maxCoeff();
  return {err <= 1e-4 && traj.time(traj.size() - 1) == 200.0, "max endpoint deviation " + fmt(err)};
}

Outcome unstable_case() {
  const auto sys = canonical_affine(kUnstable);
  const auto a = char_poly(sys);
  const bool hurwitz = routh_hurwitz_cubic(a[0], a[1], a[2]);
  const double margin = eigen_margin(sys);
  const auto closed = closed_form_coeffs(kUnstable);
  // growth rate ~1.6e-4: the tenfold departure needs a long horizon
  const auto v = simulate_and_classify(field_of(sys), kStart, 20000.0, 0.05, Method::Rk4,
                                       equilibrium(sys));
  const bool ok = analyze(kUnstable).verdict == Verdict::Unstable && !hurwitz && margin > 0.0 &&
                  v.kind == LongRun::Diverged && std::abs(closed[2] + 0.0359) < 1e-12;
  return {ok, "hurwitz " + std::string(hurwitz ? "pass" : "fail") + ", eigen_margin " + fmt(margin) +
                  ", long-run " + std::string(to_string(v.kind)) + " (distance " +
                  fmt(v.initial_distance) + " -> " + fmt(v.final_distance) +
                  "), closed-form a3 " + fmt(closed[2])};
}

Outcome hurwitz_agreement() {
  std::mt19937_64 rng(2024);
  int compared = 0;
  int agreed = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const auto sys = canonical_affine(random_r(rng));
    const double margin = eigen_margin(sys);
    if (std::abs(margin) <= 1e-6) continue;
    const auto a = char_poly(sys);
    ++compared;
    if (routh_hurwitz_cubic(a[0], a[1], a[2]) == (margin < 0.0)) ++agreed;
  }
  return {compared >= 1000 && agreed == compared,
          std::to_string(agreed) + "/" + std::to_string(compared) + " agree"};
}

Outcome gradient() {
  std::mt19937_64 rng(5150);
  constexpr double h = 1e-5;
  double worst = 0.0;
  int checks = 0;
  for (int spec_trial = 0; spec_trial < 100; ++spec_trial) {
    const auto spec = oracle::random_spec(rng, 4, 4);
    const auto order = canonical_edge_order(spec);
    for (int state = 0; state < 10; ++state) {
      const auto q = oracle::random_flow(rng, order.size());
      for (std::size_t k = 0; k < order.size(); ++k) {
        const auto i = static_cast<Eigen::Index>(k);
        FlowVector up = q;
        FlowVector down = q;
        up(i) += h;
        down(i) -= h;
        const int j = order[k].firm;
        const double fd = (profit(spec, up, j) - profit(spec, down, j)) / (2 * h);
        const double mp = marginal_profit(spec, q, order[k].market, j);
        worst = std::max(worst, std::abs(fd - mp) / std::max(1.0, std::abs(mp)));
        ++checks;
      }
    }
  }
  return {worst < 1e-6, std::to_string(checks) + " partials, worst relative error " + fmt(worst)};
}

Outcome symmetric_closed_form() {
  std::mt19937_64 rng(909);
  int draws = 0;
  int sufficient = 0;
  int failures = 0;
  double worst = 0.0;
  while (draws < 500) {
    auto r = random_r(rng);
    r.r2 = r.r1;
    FlowVector solved;
    try {
      solved = equilibrium(canonical_affine(r));
    } catch (const NoUniqueEquilibrium&) {
      continue;  // no unique equilibrium to compare against
    }
    ++draws;
    const auto closed = symmetric_equilibrium(r);
    for (int k = 0; k < 3; ++k) {
      const double err = std::abs(closed[k] - solved(k)) / std::max(1.0, std::abs(solved(k)));
      worst = std::max(worst, err);
    }
    if (symmetric_conditions(r)) {
      ++sufficient;
      const bool ok = solved(0) > 0 && solved(1) > 0 && solved(2) > 0 && solved(2) < 1 &&
                      analyze(r).verdict == Verdict::Stable;
      if (!ok) ++failures;
    }
  }
  return {worst <= 1e-10 && failures == 0 && sufficient > 0,
          "500 draws, worst mismatch " + fmt(worst) + ", " + std::to_string(sufficient) +
              " satisfy the sufficient conditions, " + std::to_string(failures) + " violations"};
}

// Endpoint error of the stable rk4 run (t_end = 200) measured in coordinates
// centred on the equilibrium. At t = 200 the state agrees with q* to rounding
// level, so absolute coordinates only show roundoff. e = q - q* obeys
// de/dt = -A e and rk4 commutes with the shift, so this is the same
// truncation error.
Outcome integrator_order() {
  const auto sys = canonical_affine(kStable);
  const auto q_star = equilibrium(sys);
  const VectorField shifted = [a = sys.matrix](const FlowVector& e) -> FlowVector { return -a * e; };
  const FlowVector e0 = kStart - q_star;
  const auto endpoint = [&](double dt) -> FlowVector {
    return integrate(shifted, e0, 200.0, dt).final_state();
  };
  const FlowVector reference = endpoint(1e-4);
  const auto err = [&](double dt) { return (endpoint(dt) - reference).norm(); };

  std::ostringstream detail;
  bool ok = true;
  for (double dt : {0.2, 0.1}) {
    const double ratio = err(dt / 2) / err(dt);
    ok = ok && ratio >= 0.75 / 16 && ratio <= 1.25 / 16;
    detail << "dt " << dt << " -> " << dt / 2 << ": ratio 1/" << fmt(1.0 / ratio) << "; ";
  }

  // for reference: the same comparison in absolute coordinates is roundoff
  const auto field = field_of(sys);
  const FlowVector abs_ref = integrate(field, kStart, 200.0, 1e-4).final_state();
  const double a1 = (integrate(field, kStart, 200.0, 0.01).final_state() - abs_ref).norm();
  const double a2 = (integrate(field, kStart, 200.0, 0.005).final_state() - abs_ref).norm();
  detail << "absolute-coordinate errors at dt 0.01/0.005: " << fmt(a1) << "/" << fmt(a2);
  return {ok, detail.str()};
}

Outcome pd_dominance() {
  std::mt19937_64 rng(8080);
  int defect = 0;
  int bracket_ok = 0;
  int bracketed = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto m = random_pd(rng);
    if (pd::dominant_strategy(m.values()) == pd::Dominance::Defect &&
        oracle::dominance(m.values()) == 'D') {
      ++defect;
    }
    const double star = pd::min_side_payment(m);
    ++bracketed;
    const char above = oracle::dominance(pd::apply_side_payment(m, star + 0.001).transit_view);
    const bool below_ok =
        star < 0.001 ||
        oracle::dominance(pd::apply_side_payment(m, star - 0.001).transit_view) != 'C';
    if (above == 'C' && below_ok) ++bracket_ok;
  }
  return {defect == 100 && bracket_ok == bracketed,
          std::to_string(defect) + "/100 defect-dominant, " + std::to_string(bracket_ok) + "/" +
              std::to_string(bracketed) + " side-payment brackets"};
}

Outcome spatial_cooperation() {
  const pd::PDMatrix m(fixture::kR, fixture::kS, fixture::kT, fixture::kU);
  const auto torus = pd::PlayerGraph::torus(fixture::kTorusSide, fixture::kTorusSide);
  const pd::InitSpec init{pd::InitSpec::Kind::Random, fixture::kInitialFraction, fixture::kSeed};
  const auto series = pd::run_spatial(torus, init, m, fixture::kSteps);
  const bool fixture_ok = pd::dominant_strategy(m.values()) == pd::Dominance::Defect &&
                          series.back() > 0.0 && series.back() == fixture::kFinalFraction;

  bool fixed_ok = true;
  std::mt19937_64 rng(11);
  for (const auto& g : {torus, pd::PlayerGraph::cycle(12), pd::PlayerGraph::complete(9)}) {
    const auto pm = random_pd(rng);
    const std::vector<pd::Strategy> all_c(g.size(), pd::Strategy::Cooperate);
    const std::vector<pd::Strategy> all_d(g.size(), pd::Strategy::Defect);
    fixed_ok = fixed_ok && pd::next_strategies(g, all_c, pm) == all_c &&
               pd::next_strategies(g, all_d, pm) == all_d;
  }

  bool collapse_ok = true;
  for (int n = 2; n <= 10 && collapse_ok; ++n) {
    const auto g = pd::PlayerGraph::complete(n);
    const auto pm = random_pd(rng);
    for (std::uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
      std::vector<pd::Strategy> s(n);
      for (int p = 0; p < n; ++p) {
        s[p] = (mask >> p) & 1u ? pd::Strategy::Cooperate : pd::Strategy::Defect;
      }
      if (pd::run_spatial(g, s, pm, n).back() != 0.0) {
        collapse_ok = false;
        break;
      }
    }
  }
  return {fixture_ok && fixed_ok && collapse_ok,
          "torus cooperation fraction after " + std::to_string(fixture::kSteps) + " steps " +
              fmt(series.back()) + ", fixed points " + (fixed_ok ? "ok" : "broken") +
              ", well-mixed collapse " + (collapse_ok ? "ok" : "broken")};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism(const std::string& cli, const fs::path& work) {
  const fs::path scenarios = COURNOT_SCENARIO_DIR;
  if (cli.empty()) {
    const auto sc = load_scenario(scenarios / "canonical_stable.scn");
    const auto sys = scenario_system(sc);
    const auto run = [&] {
      return write_trajectory(integrate(field_of(sys), scenario_initial_state(sc), 200.0, 0.01),
                              variable_names(sys.variable_order));
    };
    return {run() == run(), "library writers only (no --cli given)"};
  }

  fs::create_directories(work);
  const auto scn = [&](const char* name) { return (scenarios / name).string(); };
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"simulate_stable.csv", "simulate --scenario " + scn("canonical_stable.scn") + " --out"},
      {"simulate_unstable.csv",
       "simulate --scenario " + scn("canonical_unstable.scn") + " --method euler --dt 0.02 --out"},
      {"simulate_network.csv", "simulate --scenario " + scn("two_firms_two_markets.scn") + " --out"},
      {"pd.csv", "pd --scenario " + scn("gas_transit_pd.scn") + " --out"},
      {"pd_torus.csv", "pd --scenario " + scn("torus_cooperation.scn") + " --out"},
      {"sweep.csv", "sweep --scenario " + scn("canonical_stable.scn") +
                        " --param r3 --from 0.1 --to 3 --points 50 --out"},
  };
  const std::vector<std::pair<std::string, std::string>> printing = {
      {"stability.txt", "stability --scenario " + scn("canonical_stable.scn")},
      {"equilibrium.txt", "equilibrium --scenario " + scn("two_firms_two_markets.scn")},
  };

  int identical = 0;
  int total = 0;
  std::string failures;
  const auto compare = [&](const std::string& file, const std::string& a_cmd,
                           const std::string& b_cmd, const fs::path& a, const fs::path& b) {
    ++total;
    const int ra = std::system(a_cmd.c_str());
    const int rb = std::system(b_cmd.c_str());
    const auto da = slurp(a);
    if (ra == 0 && rb == 0 && !da.empty() && da == slurp(b)) {
      ++identical;
    } else {
      failures += " " + file;
    }
  };
  for (const auto& [file, args] : commands) {
    const auto a = work / ("a_" + file);
    const auto b = work / ("b_" + file);
    compare(file, cli + " " + args + " " + a.string() + " >/dev/null 2>&1",
            cli + " " + args + " " + b.string() + " >/dev/null 2>&1", a, b);
  }
  for (const auto& [file, args] : printing) {
    const auto a = work / ("a_" + file);
    const auto b = work / ("b_" + file);
    compare(file, cli + " " + args + " > " + a.string(), cli + " " + args + " > " + b.string(), a,
            b);
  }
  return {identical == total, std::to_string(identical) + "/" + std::to_string(total) +
                                  " commands byte-identical" +
                                  (failures.empty() ? "" : ", differing:" + failures)};
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
  fs::path work = fs::temp_directory_path() / "cournot_acceptance";
  int only = 0;
  for (int k = 1; k + 1 < argc; k += 2) {
    const std::string flag = argv[k];
    if (flag == "--cli") {
      cli = argv[k + 1];
    } else if (flag == "--work") {
      work = argv[k + 1];
    } else if (flag == "--only") {
      only = std::atoi(argv[k + 1]);
    } else {
      std::cerr << "unknown option " << flag << "\n";
      return 2;
    }
  }

  const std::vector<Criterion> criteria = {
      {1, "stable equilibrium", 0.1, stable_equilibrium},
      {2, "stable trajectory", 1.0, stable_trajectory},
      {3, "unstable case", 1.0, unstable_case},
      {4, "hurwitz/eigenvalue agreement", 5.0, hurwitz_agreement},
      {5, "gradient correctness", 1.0, gradient},
      {6, "symmetric closed form", 2.0, symmetric_closed_form},
      {7, "integrator order", 0.0, integrator_order},
      {8, "pd dominance and side payments", 0.0, pd_dominance},
      {9, "spatial cooperation", 0.0, spatial_cooperation},
      {10, "determinism", 0.0, [&] { return determinism(cli, work); }},
  };

  int failed = 0;
  int ran = 0;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    ++ran;
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit > 0 && seconds >= c.time_limit) {
      out.pass = false;
      out.detail += ", over the " + fmt(c.time_limit) + " s limit";
    }
    if (!out.pass) ++failed;
    std::printf("%s criterion %d (%s): %s [%.3f s]\n", out.pass ? "PASS" : "FAIL", c.id, c.name,
                out.detail.c_str(), seconds);
  }
  if (ran == 0) {
    std::cerr << "no criterion " << only << "\n";
    return 2;
  }
  std::printf("%d of %d criteria passed\n", ran - failed, ran);
  return failed == 0 ? 0 : 1;
}
