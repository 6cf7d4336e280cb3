#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cournot/dynamics.hpp"
#include "cournot/game.hpp"
#include "cournot/network.hpp"
#include "cournot/pd.hpp"
#include "cournot/scenario.hpp"
#include "cournot/stability.hpp"

namespace py = pybind11;
using namespace cournot;

namespace {

// Python edges are (market, firm) tuples, 0-based.
using EdgeTuple = std::pair<int, int>;

std::vector<EdgeTuple> edge_tuples(const std::vector<Edge>& edges) {
  std::vector<EdgeTuple> out;
  out.reserve(edges.size());
  for (const auto& e : edges) out.emplace_back(e.market, e.firm);
  return out;
}

std::vector<Edge> edges_from(const std::vector<EdgeTuple>& tuples) {
  std::vector<Edge> out;
  out.reserve(tuples.size());
  for (const auto& [m, f] : tuples) out.push_back({m, f});
  return out;
}

CanonicalR5 r_from(const std::array<double, 5>& r) { return CanonicalR5::from_values(r); }

py::dict report_dict(const StabilityReport& rep) {
  py::dict d;
  d["equilibrium"] = rep.equilibrium;
  d["variables"] = rep.variables;
  d["char_coeffs"] = rep.char_coeffs;
  d["hurwitz_pass"] = rep.hurwitz_pass;
  d["closed_form_coeffs"] = rep.closed_form_coeffs;
  d["eigen_margin"] = rep.eigen_margin;
  d["verdict"] = std::string(to_string(rep.verdict));
  return d;
}

pd::PlayerGraph graph_from(const std::string& kind, int a, int b,
                           const std::vector<std::pair<int, int>>& edges) {
  if (kind == "complete") return pd::PlayerGraph::complete(a);
  if (kind == "cycle") return pd::PlayerGraph::cycle(a);
  if (kind == "torus") return pd::PlayerGraph::torus(a, b);
  if (kind == "edges") return pd::PlayerGraph::from_edges(a, edges);
  throw InvalidArgument("unknown graph kind '" + kind + "'");
}

pd::InitSpec init_from(const std::string& kind, double fraction, std::uint64_t seed) {
  if (kind == "random") return {pd::InitSpec::Kind::Random, fraction, seed};
  if (kind == "all_c") return {pd::InitSpec::Kind::AllC};
  if (kind == "all_d") return {pd::InitSpec::Kind::AllD};
  if (kind == "single_defector") return {pd::InitSpec::Kind::SingleDefector};
  throw InvalidArgument("unknown init kind '" + kind + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Cournot supply-graph dynamics, stability analysis and spatial prisoner's dilemma";

  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  py::class_<NetworkSpec>(m, "NetworkSpec")
      .def(py::init([](int markets, int firms, const std::vector<EdgeTuple>& edges,
                       std::vector<double> alpha, std::vector<double> beta,
                       std::vector<double> gamma, std::vector<double> speed) {
             NetworkSpec s;
             s.market_count = markets;
             s.firm_count = firms;
             s.edges = edges_from(edges);
             s.alpha = std::move(alpha);
             s.beta = std::move(beta);
             s.gamma = std::move(gamma);
             s.speed = std::move(speed);
             return s;
           }),
           py::arg("markets"), py::arg("firms"), py::arg("edges"), py::arg("alpha"),
           py::arg("beta"), py::arg("gamma"), py::arg("speed") = std::vector<double>{})
      .def_readwrite("market_count", &NetworkSpec::market_count)
      .def_readwrite("firm_count", &NetworkSpec::firm_count)
      .def_property(
          "edges", [](const NetworkSpec& s) { return edge_tuples(s.edges); },
          [](NetworkSpec& s, const std::vector<EdgeTuple>& e) { s.edges = edges_from(e); })
      .def_readwrite("alpha", &NetworkSpec::alpha)
      .def_readwrite("beta", &NetworkSpec::beta)
      .def_readwrite("gamma", &NetworkSpec::gamma)
      .def_readwrite("speed", &NetworkSpec::speed)
      .def("canonical_edge_order",
           [](const NetworkSpec& s) { return edge_tuples(canonical_edge_order(s)); });

  py::class_<AffineSystem>(m, "AffineSystem")
      .def(py::init([](Eigen::VectorXd c, Eigen::MatrixXd a) {
             if (a.rows() != a.cols() || a.rows() != c.size()) {
               throw InvalidArgument("matrix must be square and match the constant vector");
             }
             AffineSystem sys;
             sys.constant = std::move(c);
             sys.matrix = std::move(a);
             return sys;
           }),
           py::arg("constant"), py::arg("matrix"))
      .def_readonly("constant", &AffineSystem::constant)
      .def_readonly("matrix", &AffineSystem::matrix)
      .def_property_readonly("variable_order",
                             [](const AffineSystem& s) { return edge_tuples(s.variable_order); })
      .def_property_readonly("variable_names",
                             [](const AffineSystem& s) { return variable_names(s.variable_order); })
      .def("rate", &AffineSystem::rate, py::arg("q"));

  m.def("validate", &validate, py::arg("spec"), "List of invariant violations, empty if valid.");
  m.def("two_firms_two_markets", &two_firms_two_markets, py::arg("alpha1"), py::arg("alpha2"),
        py::arg("beta1"), py::arg("beta2"), py::arg("gamma1"), py::arg("gamma2"));
  m.def("to_affine", &to_affine, py::arg("spec"));
  m.def("profit", &profit, py::arg("spec"), py::arg("q"), py::arg("firm"));
  m.def("marginal_profit", &marginal_profit, py::arg("spec"), py::arg("q"), py::arg("market"),
        py::arg("firm"));
  m.def("vector_field", &vector_field, py::arg("spec"), py::arg("q"));

  m.def(
      "canonical_affine", [](const std::array<double, 5>& r) { return canonical_affine(r_from(r)); },
      py::arg("r"));
  m.def("equilibrium", &equilibrium, py::arg("system"));
  m.def("char_poly", &char_poly, py::arg("system"));
  m.def("eigen_margin", &eigen_margin, py::arg("system"));
  m.def("routh_hurwitz_cubic", &routh_hurwitz_cubic, py::arg("a1"), py::arg("a2"), py::arg("a3"));
  m.def(
      "closed_form_coeffs",
      [](const std::array<double, 5>& r) { return closed_form_coeffs(r_from(r)); }, py::arg("r"));
  m.def(
      "symmetric_equilibrium",
      [](const std::array<double, 5>& r) { return symmetric_equilibrium(r_from(r)); },
      py::arg("r"));
  m.def(
      "analyze", [](const AffineSystem& sys) { return report_dict(analyze(sys)); },
      py::arg("system"));
  m.def(
      "analyze", [](const std::array<double, 5>& r) { return report_dict(analyze(r_from(r))); },
      py::arg("r"));

  m.def(
      "simulate",
      [](const AffineSystem& sys, const Eigen::VectorXd& q0, double t_end, double dt,
         const std::string& method) {
        const VectorField field = [&sys](const FlowVector& q) -> FlowVector {
          return sys.rate(q);
        };
        Trajectory traj;
        {
          py::gil_scoped_release release;
          traj = integrate(field, q0, t_end, dt, parse_method(method));
        }
        Eigen::MatrixXd states(static_cast<Eigen::Index>(traj.size()), traj.dimension());
        for (std::size_t k = 0; k < traj.size(); ++k) {
          states.row(static_cast<Eigen::Index>(k)) = traj.state(k).transpose();
        }
        return py::make_tuple(traj.times(), states);
      },
      py::arg("system"), py::arg("q0"), py::arg("t_end") = 200.0, py::arg("dt") = 0.01,
      py::arg("method") = "rk4", "Returns (times, states) with one state per row.");

  m.def(
      "dominant_strategy",
      [](double R, double S, double T, double U) {
        return pd::to_string(pd::dominant_strategy(pd::PayoffValues{R, S, T, U}));
      },
      py::arg("R"), py::arg("S"), py::arg("T"), py::arg("U"));
  m.def(
      "min_side_payment",
      [](double R, double S, double T, double U) {
        return pd::min_side_payment(pd::PDMatrix(R, S, T, U));
      },
      py::arg("R"), py::arg("S"), py::arg("T"), py::arg("U"));
  m.def(
      "run_spatial",
      [](const std::array<double, 4>& payoff, const std::string& graph, int a, int b,
         const std::vector<std::pair<int, int>>& edges, const std::string& init, double fraction,
         std::uint64_t seed, int steps) {
        const pd::PDMatrix pm(payoff[0], payoff[1], payoff[2], payoff[3]);
        return pd::run_spatial(graph_from(graph, a, b, edges), init_from(init, fraction, seed), pm,
                               steps);
      },
      py::arg("payoff"), py::arg("graph"), py::arg("a"), py::arg("b") = 0,
      py::arg("edges") = std::vector<std::pair<int, int>>{}, py::arg("init") = "random",
      py::arg("fraction") = 0.5, py::arg("seed") = 0, py::arg("steps") = 100,
      "Cooperation fraction per step. graph is complete|cycle|torus|edges with sizes a (and b "
      "for the torus height).");

  m.def(
      "render_scenario",
      [](const std::string& text) { return render_scenario(parse_scenario(text)); },
      py::arg("text"), "Parse scenario text and return its canonical rendering.");
  m.def(
      "scenario_stability_report",
      [](const std::string& text) {
        return render_stability_report(scenario_stability(parse_scenario(text)));
      },
      py::arg("text"));
}
