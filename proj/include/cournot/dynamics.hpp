#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cournot/errors.hpp"
#include "cournot/network.hpp"

namespace cournot {

using VectorField = std::function<FlowVector(const FlowVector&)>;

enum class Method { Rk4, Euler };

std::string_view to_string(Method method);
// Accepts "rk4" and "euler".
Method parse_method(std::string_view name);

// Fixed-step solution; states are stored contiguously, one row per time.
class Trajectory {
 public:
  Trajectory() = default;
  Trajectory(Method method, double step, Eigen::Index dimension);

  void append(double t, const FlowVector& q);
  void reserve(std::size_t count);

  std::size_t size() const { return times_.size(); }
  bool empty() const { return times_.empty(); }
  Eigen::Index dimension() const { return dimension_; }
  Method method() const { return method_; }
  double step() const { return step_; }

  const std::vector<double>& times() const { return times_; }
  double time(std::size_t k) const { return times_.at(k); }
  Eigen::Map<const Eigen::VectorXd> state(std::size_t k) const;
  Eigen::Map<const Eigen::VectorXd> final_state() const { return state(size() - 1); }

 private:
  Method method_ = Method::Rk4;
  double step_ = 0.0;
  Eigen::Index dimension_ = 0;
  std::vector<double> times_;
  std::vector<double> states_;
};

// Raised when the field or the state stops being finite. Carries every
// state accepted before the failure.
class IntegrationError : public NumericalError {
 public:
  IntegrationError(const std::string& what, double time, Trajectory partial = {});

  double time() const noexcept { return time_; }
  const Trajectory& partial() const noexcept { return partial_; }

 private:
  double time_;
  Trajectory partial_;
};

FlowVector step_rk4(const VectorField& field, const FlowVector& q, double dt);
FlowVector step_euler(const VectorField& field, const FlowVector& q, double dt);

// Fixed-step march from t = 0 to t_end, recording every step. The last step
// is shortened when t_end is not a multiple of dt.
Trajectory integrate(const VectorField& field, const FlowVector& q0, double t_end, double dt,
                     Method method = Method::Rk4);

enum class LongRun { Converged, Diverged, Undecided };

std::string_view to_string(LongRun kind);

struct LongRunVerdict {
  LongRun kind = LongRun::Undecided;
  std::optional<FlowVector> limit;  // set when Converged
  double final_field_norm = 0.0;    // inf-norm of the field at the last state
  double max_abs_state = 0.0;       // largest |q| component seen
  bool negative_excursion = false;  // some flow went below zero
  bool blew_up = false;
  double initial_distance = 0.0;    // inf-norm distance to q_star
  double final_distance = 0.0;
};

inline constexpr double kDefaultConvergenceTolerance = 1e-6;
inline constexpr double kBlowUpNorm = 1e9;
inline constexpr double kDivergenceFactor = 10.0;

// Converged: field inf-norm at the last state below `tol` and the distance to
// q_star did not grow. Diverged: distance grew more than tenfold, a state
// exceeded kBlowUpNorm, or `blew_up` is set. Undecided otherwise.
LongRunVerdict classify(const Trajectory& trajectory, const VectorField& field,
                        const FlowVector& q_star, double tol = kDefaultConvergenceTolerance,
                        bool blew_up = false);

// integrate() followed by classify(); an IntegrationError becomes Diverged.
LongRunVerdict simulate_and_classify(const VectorField& field, const FlowVector& q0, double t_end,
                                     double dt, Method method, const FlowVector& q_star,
                                     double tol = kDefaultConvergenceTolerance);

}  // namespace cournot
