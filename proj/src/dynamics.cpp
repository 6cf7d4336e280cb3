#include "cournot/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cournot {

namespace {

std::string describe(const FlowVector& q) {
  std::ostringstream out;
  out << "(";
  for (Eigen::Index k = 0; k < q.size(); ++k) out << (k ? ", " : "") << q(k);
  out << ")";
  return out.str();
}

FlowVector evaluate(const VectorField& field, const FlowVector& q) {
  FlowVector f = field(q);
  if (f.size() != q.size()) throw InvalidArgument("vector field changed the state dimension");
  if (!f.allFinite()) throw IntegrationError("non-finite field value at state " + describe(q), 0.0);
  return f;
}

std::size_t step_count(double t_end, double dt) {
  const double ratio = t_end / dt;
  const double nearest = std::round(ratio);
  if (std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, ratio)) {
    return static_cast<std::size_t>(nearest);
  }
  return static_cast<std::size_t>(std::ceil(ratio));
}

}  // namespace

std::string_view to_string(Method method) {
  return method == Method::Rk4 ? "rk4" : "euler";
}

Method parse_method(std::string_view name) {
  if (name == "rk4") return Method::Rk4;
  if (name == "euler") return Method::Euler;
  throw InvalidArgument("unknown integration method '" + std::string(name) + "'");
}

Trajectory::Trajectory(Method method, double step, Eigen::Index dimension)
    : method_(method), step_(step), dimension_(dimension) {}

void Trajectory::append(double t, const FlowVector& q) {
  if (q.size() != dimension_) throw InvalidArgument("trajectory state has the wrong dimension");
  times_.push_back(t);
  states_.insert(states_.end(), q.data(), q.data() + q.size());
}

void Trajectory::reserve(std::size_t count) {
  times_.reserve(count);
  states_.reserve(count * static_cast<std::size_t>(dimension_));
}

Eigen::Map<const Eigen::VectorXd> Trajectory::state(std::size_t k) const {
  if (k >= size()) throw std::out_of_range("trajectory index out of range");
  return {states_.data() + k * static_cast<std::size_t>(dimension_), dimension_};
}

IntegrationError::IntegrationError(const std::string& what, double time, Trajectory partial)
    : NumericalError(what), time_(time), partial_(std::move(partial)) {}

FlowVector step_rk4(const VectorField& field, const FlowVector& q, double dt) {
  if (!(dt > 0.0)) throw InvalidArgument("step must be positive");
  const FlowVector k1 = evaluate(field, q);
  const FlowVector k2 = evaluate(field, q + (dt / 2.0) * k1);
  const FlowVector k3 = evaluate(field, q + (dt / 2.0) * k2);
  const FlowVector k4 = evaluate(field, q + dt * k3);
  return q + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

FlowVector step_euler(const VectorField& field, const FlowVector& q, double dt) {
  if (!(dt > 0.0)) throw InvalidArgument("step must be positive");
  return q + dt * evaluate(field, q);
}

Trajectory integrate(const VectorField& field, const FlowVector& q0, double t_end, double dt,
                     Method method) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("dt must be positive");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw InvalidArgument("t_end must be positive");
  if (dt > t_end) throw InvalidArgument("dt must not exceed t_end");
  if (!q0.allFinite()) throw InvalidArgument("initial state has non-finite entries");

  const std::size_t steps = step_count(t_end, dt);
  Trajectory traj(method, dt, q0.size());
  traj.reserve(steps + 1);
  traj.append(0.0, q0);

  FlowVector q = q0;
  for (std::size_t k = 1; k <= steps; ++k) {
    const double t_prev = static_cast<double>(k - 1) * dt;
    const double t = k == steps ? t_end : static_cast<double>(k) * dt;
    const double h = t - t_prev;
    try {
      q = method == Method::Rk4 ? step_rk4(field, q, h) : step_euler(field, q, h);
    } catch (const IntegrationError& e) {
      throw IntegrationError(std::string(e.what()) + " at t = " + std::to_string(t_prev), t_prev,
                             std::move(traj));
    }
    if (!q.allFinite()) {
      throw IntegrationError("state became non-finite at t = " + std::to_string(t), t,
                             std::move(traj));
    }
    traj.append(t, q);
  }
  return traj;
}

std::string_view to_string(LongRun kind) {
  switch (kind) {
    case LongRun::Converged:
      return "converged";
    case LongRun::Diverged:
      return "diverged";
    case LongRun::Undecided:
      break;
  }
  return "undecided";
}

LongRunVerdict classify(const Trajectory& trajectory, const VectorField& field,
                        const FlowVector& q_star, double tol, bool blew_up) {
  LongRunVerdict v;
  v.blew_up = blew_up;
  if (trajectory.empty()) {
    v.kind = blew_up ? LongRun::Diverged : LongRun::Undecided;
    return v;
  }
  if (q_star.size() != trajectory.dimension()) {
    throw InvalidArgument("candidate equilibrium has the wrong dimension");
  }
  for (std::size_t k = 0; k < trajectory.size(); ++k) {
    const auto q = trajectory.state(k);
    v.max_abs_state = std::max(v.max_abs_state, q.cwiseAbs().maxCoeff());
    if (q.minCoeff() < 0.0) v.negative_excursion = true;
  }
  const FlowVector last = trajectory.final_state();
  v.initial_distance = (trajectory.state(0) - q_star).cwiseAbs().maxCoeff();
  v.final_distance = (last - q_star).cwiseAbs().maxCoeff();

  const FlowVector f = field(last);
  v.final_field_norm = f.allFinite() ? f.cwiseAbs().maxCoeff() : INFINITY;

  const bool approached = v.final_distance < v.initial_distance || v.final_distance == 0.0;
  if (blew_up || v.max_abs_state > kBlowUpNorm ||
      v.final_distance > kDivergenceFactor * v.initial_distance) {
    v.kind = LongRun::Diverged;
  } else if (v.final_field_norm < tol && approached) {
    v.kind = LongRun::Converged;
    v.limit = last;
  } else {
    v.kind = LongRun::Undecided;
  }
  return v;
}

LongRunVerdict simulate_and_classify(const VectorField& field, const FlowVector& q0, double t_end,
                                     double dt, Method method, const FlowVector& q_star,
                                     double tol) {
  try {
    return classify(integrate(field, q0, t_end, dt, method), field, q_star, tol);
  } catch (const IntegrationError& e) {
    return classify(e.partial(), field, q_star, tol, true);
  }
}

}  // namespace cournot
