#include "cournot/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace cournot {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string_view> words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t k = 0;
  while (k < s.size()) {
    while (k < s.size() && (s[k] == ' ' || s[k] == '\t')) ++k;
    const std::size_t start = k;
    while (k < s.size() && s[k] != ' ' && s[k] != '\t') ++k;
    if (k > start) out.push_back(s.substr(start, k - start));
  }
  return out;
}

struct Entry {
  std::string value;
  int line = 0;
};

// Reads typed values out of the key/value lines of one section and rejects
// anything left unread.
class Fields {
 public:
  Fields(std::map<std::string, Entry> entries, int section_line)
      : entries_(std::move(entries)), section_line_(section_line) {}

  bool has(const std::string& key) const { return entries_.count(key) != 0; }

  const Entry& require(const std::string& key) {
    auto it = entries_.find(key);
    if (it == entries_.end()) throw ParseError(section_line_, "missing key '" + key + "'");
    used_.push_back(key);
    return it->second;
  }

  int line_of(const std::string& key) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? section_line_ : it->second.line;
  }

  double number(const std::string& key) {
    const Entry& e = require(key);
    return parse_number(e.value, key, e.line);
  }

  int integer(const std::string& key) {
    const Entry& e = require(key);
    return parse_integer(e.value, key, e.line);
  }

  std::vector<double> numbers(const std::string& key) {
    const Entry& e = require(key);
    std::vector<double> out;
    for (auto item : split(e.value, ',')) out.push_back(parse_number(item, key, e.line));
    return out;
  }

  void reject_unknown() const {
    for (const auto& [key, entry] : entries_) {
      if (std::find(used_.begin(), used_.end(), key) == used_.end()) {
        throw ParseError(entry.line, "unknown key '" + key + "'");
      }
    }
  }

  static double parse_number(std::string_view text, const std::string& key, int line) {
    text = trim(text);
    double value = 0.0;
    const char* end = text.data() + text.size();
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (text.empty() || ec != std::errc{} || ptr != end || !std::isfinite(value)) {
      throw ParseError(line, key + ": '" + std::string(text) + "' is not a finite number");
    }
    return value;
  }

  static int parse_integer(std::string_view text, const std::string& key, int line) {
    text = trim(text);
    int value = 0;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (text.empty() || ec != std::errc{} || ptr != end) {
      throw ParseError(line, key + ": '" + std::string(text) + "' is not an integer");
    }
    return value;
  }

 private:
  std::map<std::string, Entry> entries_;
  std::vector<std::string> used_;
  int section_line_;
};

void require_count(const std::vector<double>& values, std::size_t count, const std::string& key,
                   int line) {
  if (values.size() != count) {
    throw ParseError(line, key + ": expected " + std::to_string(count) + " values, got " +
                               std::to_string(values.size()));
  }
}

NetworkScenario parse_network(Fields& f) {
  NetworkScenario sc;
  NetworkSpec& spec = sc.spec;
  spec.market_count = f.integer("markets");
  spec.firm_count = f.integer("firms");
  if (spec.market_count <= 0) throw ParseError(f.line_of("markets"), "markets: must be positive");
  if (spec.firm_count <= 0) throw ParseError(f.line_of("firms"), "firms: must be positive");

  const Entry& edges = f.require("edges");
  for (auto item : split(edges.value, ',')) {
    const auto parts = split(item, ':');
    if (parts.size() != 2) {
      throw ParseError(edges.line, "edges: '" + std::string(item) + "' is not a market:firm pair");
    }
    const int market = Fields::parse_integer(parts[0], "edges", edges.line);
    const int firm = Fields::parse_integer(parts[1], "edges", edges.line);
    spec.edges.push_back({market - 1, firm - 1});
  }
  spec.alpha = f.numbers("alpha");
  spec.beta = f.numbers("beta");
  spec.gamma = f.numbers("gamma");
  if (f.has("speed")) spec.speed = f.numbers("speed");

  for (const auto& violation : validate(spec)) {
    const std::string head = violation.substr(0, violation.find_first_of("[ "));
    std::string key = head;
    if (head == "edge" || head == "market" || head == "firm") key = "edges";
    if (head == "markets" || head == "firms") key = head;
    throw ParseError(f.line_of(key), key + ": " + violation);
  }

  const auto q0 = f.numbers("q0");
  require_count(q0, spec.edges.size(), "q0", f.line_of("q0"));
  sc.q0 = Eigen::Map<const Eigen::VectorXd>(q0.data(), static_cast<Eigen::Index>(q0.size()));
  return sc;
}

CanonicalScenario parse_canonical(Fields& f) {
  CanonicalScenario sc;
  const auto r = f.numbers("r");
  require_count(r, 5, "r", f.line_of("r"));
  sc.r = {r[0], r[1], r[2], r[3], r[4]};
  const auto q0 = f.numbers("q0");
  require_count(q0, 3, "q0", f.line_of("q0"));
  sc.q0 = {q0[0], q0[1], q0[2]};
  return sc;
}

GraphSpec parse_graph(const Entry& e) {
  GraphSpec g;
  const std::string_view value = trim(e.value);
  const auto w = words(value);
  if (w.empty()) throw ParseError(e.line, "graph: empty value");
  auto count = [&](std::size_t expected) {
    if (w.size() != expected) throw ParseError(e.line, "graph: wrong number of arguments");
  };
  if (w[0] == "complete" || w[0] == "cycle") {
    count(2);
    g.kind = w[0] == "complete" ? GraphSpec::Kind::Complete : GraphSpec::Kind::Cycle;
    g.players = Fields::parse_integer(w[1], "graph", e.line);
  } else if (w[0] == "torus") {
    count(3);
    g.kind = GraphSpec::Kind::Torus;
    g.width = Fields::parse_integer(w[1], "graph", e.line);
    g.height = Fields::parse_integer(w[2], "graph", e.line);
  } else if (w[0] == "edges") {
    g.kind = GraphSpec::Kind::Edges;
    for (auto item : split(trim(value.substr(5)), ',')) {
      const auto parts = split(item, '-');
      if (parts.size() != 2) {
        throw ParseError(e.line, "graph: '" + std::string(item) + "' is not an i-j pair");
      }
      const int a = Fields::parse_integer(parts[0], "graph", e.line);
      const int b = Fields::parse_integer(parts[1], "graph", e.line);
      if (a < 1 || b < 1) throw ParseError(e.line, "graph: player indices start at 1");
      g.edges.emplace_back(a - 1, b - 1);
      g.players = std::max({g.players, a, b});
    }
  } else {
    throw ParseError(e.line, "graph: unknown kind '" + std::string(w[0]) + "'");
  }
  try {
    (void)g.build();
  } catch (const InvalidArgument& err) {
    throw ParseError(e.line, std::string("graph: ") + err.what());
  }
  return g;
}

pd::InitSpec parse_init(const Entry& e) {
  pd::InitSpec init;
  const auto w = words(e.value);
  if (w.size() == 1 && w[0] == "all_c") {
    init.kind = pd::InitSpec::Kind::AllC;
  } else if (w.size() == 1 && w[0] == "all_d") {
    init.kind = pd::InitSpec::Kind::AllD;
  } else if (w.size() == 1 && w[0] == "single_defector") {
    init.kind = pd::InitSpec::Kind::SingleDefector;
  } else if (w.size() == 3 && w[0] == "random") {
    init.kind = pd::InitSpec::Kind::Random;
    init.fraction = Fields::parse_number(w[1], "init", e.line);
    if (!(init.fraction >= 0.0 && init.fraction <= 1.0)) {
      throw ParseError(e.line, "init: fraction must lie in [0, 1]");
    }
    std::uint64_t seed = 0;
    const char* end = w[2].data() + w[2].size();
    auto [ptr, ec] = std::from_chars(w[2].data(), end, seed);
    if (ec != std::errc{} || ptr != end) throw ParseError(e.line, "init: seed must be an integer");
    init.seed = seed;
  } else {
    throw ParseError(e.line, "init: expected 'random FRACTION SEED', 'all_c', 'all_d' or "
                             "'single_defector'");
  }
  return init;
}

PDScenario parse_pd(Fields& f) {
  const auto payoff = f.numbers("payoff");
  require_count(payoff, 4, "payoff", f.line_of("payoff"));
  std::optional<pd::PDMatrix> m;
  try {
    m.emplace(payoff[0], payoff[1], payoff[2], payoff[3]);
  } catch (const InvalidArgument& err) {
    throw ParseError(f.line_of("payoff"), std::string("payoff: ") + err.what());
  }
  PDScenario sc{*m, parse_graph(f.require("graph")), parse_init(f.require("init")), 0, {}};
  sc.steps = f.integer("steps");
  if (sc.steps < 0) throw ParseError(f.line_of("steps"), "steps: must be nonnegative");
  if (f.has("side_payment")) {
    const double sigma = f.number("side_payment");
    if (sigma < 0.0) {
      throw ParseError(f.line_of("side_payment"), "side_payment: must be nonnegative");
    }
    sc.side_payment = sigma;
  }
  return sc;
}

std::string join_numbers(const auto& values) {
  std::string out;
  for (double v : values) {
    if (!out.empty()) out += ", ";
    out += format_number(v);
  }
  return out;
}

std::string pass_fail(bool ok) { return ok ? "pass" : "fail"; }

void write_hurwitz_checks(std::ostringstream& out, double a1, double a2, double a3) {
  out << "  a1 > 0: " << pass_fail(a1 > 0.0) << "\n";
  out << "  a3 > 0: " << pass_fail(a3 > 0.0) << "\n";
  out << "  a1*a2 > a3: " << pass_fail(a1 * a2 > a3) << "\n";
}

}  // namespace

ParseError::ParseError(int line, const std::string& message)
    : InvalidArgument("line " + std::to_string(line) + ": " + message), line_(line) {}

pd::PlayerGraph GraphSpec::build() const {
  switch (kind) {
    case Kind::Complete:
      return pd::PlayerGraph::complete(players);
    case Kind::Cycle:
      return pd::PlayerGraph::cycle(players);
    case Kind::Torus:
      return pd::PlayerGraph::torus(width, height);
    case Kind::Edges:
      break;
  }
  return pd::PlayerGraph::from_edges(players, edges);
}

Scenario parse_scenario(std::string_view text) {
  std::string section;
  int section_line = 0;
  std::map<std::string, Entry> entries;

  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    std::string_view line =
        text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    start = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(line_no, "malformed section header");
      const std::string name(trim(line.substr(1, line.size() - 2)));
      if (name != "network" && name != "canonical" && name != "pd") {
        throw ParseError(line_no, "unknown section [" + name + "]");
      }
      if (!section.empty()) {
        throw ParseError(line_no, "multiple sections in one file ([" + section + "] and [" +
                                      name + "])");
      }
      section = name;
      section_line = line_no;
      continue;
    }
    if (section.empty()) throw ParseError(line_no, "expected a section header before any key");
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ParseError(line_no, "empty key");
    if (value.empty()) throw ParseError(line_no, key + ": empty value");
    if (!entries.emplace(key, Entry{value, line_no}).second) {
      throw ParseError(line_no, "duplicate key '" + key + "'");
    }
  }
  if (section.empty()) throw ParseError(line_no, "no section header found");

  Fields fields(std::move(entries), section_line);
  Scenario out = [&]() -> Scenario {
    if (section == "network") return parse_network(fields);
    if (section == "canonical") return parse_canonical(fields);
    return parse_pd(fields);
  }();
  fields.reject_unknown();
  return out;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open scenario file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str());
}

std::string format_number(double value) {
  if (value == 0.0) return "0";  // also folds -0
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, ptr);
}

std::string render_scenario(const Scenario& scenario) {
  std::ostringstream out;
  if (const auto* net = std::get_if<NetworkScenario>(&scenario)) {
    const NetworkSpec& s = net->spec;
    out << "[network]\n";
    out << "markets = " << s.market_count << "\n";
    out << "firms = " << s.firm_count << "\n";
    out << "edges = ";
    const auto order = canonical_edge_order(s);
    for (std::size_t k = 0; k < order.size(); ++k) {
      out << (k ? ", " : "") << order[k].market + 1 << ":" << order[k].firm + 1;
    }
    out << "\n";
    out << "alpha = " << join_numbers(s.alpha) << "\n";
    out << "beta = " << join_numbers(s.beta) << "\n";
    out << "gamma = " << join_numbers(s.gamma) << "\n";
    if (!s.speed.empty()) out << "speed = " << join_numbers(s.speed) << "\n";
    out << "q0 = " << join_numbers(std::vector<double>(net->q0.begin(), net->q0.end())) << "\n";
  } else if (const auto* can = std::get_if<CanonicalScenario>(&scenario)) {
    out << "[canonical]\n";
    out << "r = " << join_numbers(can->r.values()) << "\n";
    out << "q0 = " << join_numbers(can->q0) << "\n";
  } else {
    const auto& p = std::get<PDScenario>(scenario);
    out << "[pd]\n";
    out << "payoff = "
        << join_numbers(std::array{p.payoff.R(), p.payoff.S(), p.payoff.T(), p.payoff.U()}) << "\n";
    out << "graph = ";
    switch (p.graph.kind) {
      case GraphSpec::Kind::Complete:
        out << "complete " << p.graph.players;
        break;
      case GraphSpec::Kind::Cycle:
        out << "cycle " << p.graph.players;
        break;
      case GraphSpec::Kind::Torus:
        out << "torus " << p.graph.width << " " << p.graph.height;
        break;
      case GraphSpec::Kind::Edges:
        out << "edges ";
        for (std::size_t k = 0; k < p.graph.edges.size(); ++k) {
          out << (k ? ", " : "") << p.graph.edges[k].first + 1 << "-" << p.graph.edges[k].second + 1;
        }
        break;
    }
    out << "\n";
    out << "init = ";
    switch (p.init.kind) {
      case pd::InitSpec::Kind::AllC:
        out << "all_c";
        break;
      case pd::InitSpec::Kind::AllD:
        out << "all_d";
        break;
      case pd::InitSpec::Kind::SingleDefector:
        out << "single_defector";
        break;
      case pd::InitSpec::Kind::Random:
        out << "random " << format_number(p.init.fraction) << " " << p.init.seed;
        break;
    }
    out << "\n";
    out << "steps = " << p.steps << "\n";
    if (p.side_payment) out << "side_payment = " << format_number(*p.side_payment) << "\n";
  }
  return out.str();
}

std::string strip_comments(std::string_view text) {
  std::string out;
  for (auto line : split(text, '\n')) {
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    out.append(line);
    out.push_back('\n');
  }
  return out;
}

std::string write_trajectory(const Trajectory& trajectory, const std::vector<std::string>& names,
                             std::size_t thin) {
  if (thin < 1) throw InvalidArgument("thinning factor must be at least 1");
  if (static_cast<Eigen::Index>(names.size()) != trajectory.dimension()) {
    throw InvalidArgument("column names do not match the trajectory dimension");
  }
  std::string out = "t";
  for (const auto& name : names) out += "," + name;
  out += "\n";
  const std::size_t count = trajectory.size();
  for (std::size_t k = 0; k < count; ++k) {
    if (k % thin != 0 && k + 1 != count) continue;
    out += format_number(trajectory.time(k));
    const auto q = trajectory.state(k);
    for (Eigen::Index c = 0; c < q.size(); ++c) out += "," + format_number(q(c));
    out += "\n";
  }
  return out;
}

std::string render_stability_report(const StabilityReport& report) {
  std::ostringstream out;
  const std::size_t n = report.char_coeffs.size();
  out << "dimension: " << n << "\n";
  out << "equilibrium:\n";
  for (Eigen::Index k = 0; k < report.equilibrium.size(); ++k) {
    const auto idx = static_cast<std::size_t>(k);
    const std::string name = idx < report.variables.size() ? report.variables[idx]
                                                           : "x" + std::to_string(k + 1);
    out << "  " << name << " = " << format_number(report.equilibrium(k)) << "\n";
  }
  out << "characteristic coefficients (det(lambda I - J) = lambda^" << n
      << (n ? " + a1 lambda^" + std::to_string(n - 1) + " + ..." : std::string()) << "):\n";
  for (std::size_t k = 0; k < n; ++k) {
    out << "  a" << k + 1 << " = " << format_number(report.char_coeffs[k]) << "\n";
  }
  if (report.hurwitz_pass) {
    out << "routh-hurwitz:\n";
    write_hurwitz_checks(out, report.char_coeffs[0], report.char_coeffs[1], report.char_coeffs[2]);
    out << "  all conditions: " << pass_fail(*report.hurwitz_pass) << "\n";
  } else {
    out << "routh-hurwitz: not evaluated for dimension " << n << "\n";
  }
  if (report.closed_form_coeffs) {
    const auto [a1, a2, a3] = *report.closed_form_coeffs;
    out << "closed-form coefficients (a3 = r1 r2 r3 - r1 r4 - r2 r5):\n";
    out << "  a1 = " << format_number(a1) << "\n";
    out << "  a2 = " << format_number(a2) << "\n";
    out << "  a3 = " << format_number(a3) << "\n";
    write_hurwitz_checks(out, a1, a2, a3);
    out << "  all conditions: " << pass_fail(routh_hurwitz_cubic(a1, a2, a3)) << "\n";
  }
  out << "eigen_margin: " << format_number(report.eigen_margin) << "\n";
  out << "verdict: " << to_string(report.verdict) << "\n";
  return out.str();
}

AffineSystem scenario_system(const Scenario& scenario) {
  if (const auto* net = std::get_if<NetworkScenario>(&scenario)) return to_affine(net->spec);
  if (const auto* can = std::get_if<CanonicalScenario>(&scenario)) return canonical_affine(can->r);
  throw InvalidArgument("a [pd] scenario has no flow dynamics");
}

FlowVector scenario_initial_state(const Scenario& scenario) {
  if (const auto* net = std::get_if<NetworkScenario>(&scenario)) return net->q0;
  if (const auto* can = std::get_if<CanonicalScenario>(&scenario)) {
    return Eigen::Vector3d(can->q0[0], can->q0[1], can->q0[2]);
  }
  throw InvalidArgument("a [pd] scenario has no flow dynamics");
}

StabilityReport scenario_stability(const Scenario& scenario) {
  if (const auto* can = std::get_if<CanonicalScenario>(&scenario)) return analyze(can->r);
  return analyze(scenario_system(scenario));
}

int parse_parameter_name(std::string_view name) {
  if (name.size() == 2 && name[0] == 'r' && name[1] >= '1' && name[1] <= '5') return name[1] - '1';
  throw InvalidArgument("unknown parameter '" + std::string(name) + "' (expected r1..r5)");
}

std::vector<SweepPoint> sweep(const CanonicalScenario& scenario, int parameter, double from,
                              double to, int points) {
  if (parameter < 0 || parameter > 4) throw InvalidArgument("parameter index must be 0..4");
  if (points < 2) throw InvalidArgument("sweep needs at least two points");
  if (!(from < to) || !std::isfinite(from) || !std::isfinite(to)) {
    throw InvalidArgument("sweep needs finite from < to");
  }
  std::vector<SweepPoint> out(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) {
    SweepPoint& p = out[static_cast<std::size_t>(k)];
    p.value = k + 1 == points ? to : from + (to - from) * k / (points - 1);
    try {
      const auto rep = analyze(scenario.r.with(parameter, p.value));
      p.verdict = rep.verdict;
      p.eigen_margin = rep.eigen_margin;
    } catch (const std::exception& e) {
      p.eigen_margin = std::nan("");
      p.error = e.what();
    }
  }
  return out;
}

std::string write_sweep(const std::vector<SweepPoint>& points) {
  std::string out = "value,verdict,eigen_margin\n";
  for (const auto& p : points) {
    out += format_number(p.value) + ",";
    out += p.verdict ? std::string(to_string(*p.verdict)) : std::string("ERROR");
    out += "," + (p.verdict ? format_number(p.eigen_margin) : std::string("nan")) + "\n";
  }
  return out;
}

std::string write_pd_series(const std::vector<double>& fractions) {
  std::string out = "step,coop_fraction\n";
  for (std::size_t k = 0; k < fractions.size(); ++k) {
    out += std::to_string(k) + "," + format_number(fractions[k]) + "\n";
  }
  return out;
}

}  // namespace cournot
