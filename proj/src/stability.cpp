#include "cournot/stability.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "cournot/errors.hpp"

namespace cournot {

namespace {

constexpr double kSymmetryTolerance = 1e-12;

void require_symmetric(const CanonicalR5& r, const char* op) {
  if (std::abs(r.r1 - r.r2) > kSymmetryTolerance) {
    throw InvalidArgument(std::string(op) + " requires r1 == r2");
  }
  if (!(r.r1 > 0.0 && r.r2 > 0.0 && r.r3 > 0.0)) {
    throw InvalidArgument(std::string(op) + " requires r1, r2, r3 > 0");
  }
}

void require_finite(const CanonicalR5& r) {
  for (double v : r.values()) {
    if (!std::isfinite(v)) throw InvalidArgument("canonical parameters must be finite");
  }
}

}  // namespace

CanonicalR5 CanonicalR5::with(int index, double value) const {
  auto v = values();
  v.at(static_cast<std::size_t>(index)) = value;
  return from_values(v);
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Stable:
      return "STABLE";
    case Verdict::Unstable:
      return "UNSTABLE";
    case Verdict::Marginal:
      break;
  }
  return "MARGINAL";
}

FlowVector equilibrium(const AffineSystem& sys) {
  const Eigen::Index n = sys.dimension();
  if (sys.matrix.rows() != n || sys.matrix.cols() != n) {
    throw InvalidArgument("affine system matrix is not square or does not match the constant");
  }
  if (n == 0) return FlowVector{};

  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(sys.matrix);
  const Eigen::MatrixXd inverse = lu.inverse();
  const double norm_a = sys.matrix.cwiseAbs().colwise().sum().maxCoeff();
  const double norm_inv = inverse.cwiseAbs().colwise().sum().maxCoeff();
  const double cond = norm_a * norm_inv;
  if (!std::isfinite(cond) || cond > kConditionLimit || norm_a == 0.0) {
    std::ostringstream msg;
    msg << "no unique equilibrium: matrix is singular or ill-conditioned (cond1 = " << cond << ")";
    throw NoUniqueEquilibrium(msg.str());
  }
  FlowVector q = lu.solve(sys.constant);
  // One step of iterative refinement keeps the residual at rounding level.
  q += lu.solve(Eigen::VectorXd(sys.constant - sys.matrix * q));
  return q;
}

std::vector<double> char_poly(const AffineSystem& sys) {
  const Eigen::Index n = sys.matrix.rows();
  const Eigen::MatrixXd jac = -sys.matrix;
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(n, n);
  std::vector<double> coeffs(static_cast<std::size_t>(n));
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  double previous = 1.0;
  for (Eigen::Index k = 1; k <= n; ++k) {
    m = jac * m + previous * eye;
    previous = -(jac * m).trace() / static_cast<double>(k);
    coeffs[static_cast<std::size_t>(k - 1)] = previous;
  }
  return coeffs;
}

bool routh_hurwitz_cubic(double a1, double a2, double a3) {
  return a1 > 0.0 && a3 > 0.0 && a1 * a2 > a3;
}

double eigen_margin(const AffineSystem& sys) {
  if (sys.matrix.rows() == 0) throw InvalidArgument("eigen_margin of an empty system");
  const Eigen::EigenSolver<Eigen::MatrixXd> solver(-sys.matrix, false);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eigenvalue iteration did not converge");
  }
  return solver.eigenvalues().real().maxCoeff();
}

Verdict verdict_from_margin(double margin) {
  if (margin < -kMarginalBand) return Verdict::Stable;
  if (margin > kMarginalBand) return Verdict::Unstable;
  return Verdict::Marginal;
}

std::array<double, 3> canonical_field(const CanonicalR5& r, const std::array<double, 3>& q) {
  const auto [q11, q22, q21] = q;
  return {1.0 - r.r1 * q11 - q21, 1.0 - r.r2 * q22 - q21,
          1.0 - r.r3 * q21 - r.r4 * q11 - r.r5 * q22};
}

AffineSystem canonical_affine(const CanonicalR5& r) {
  require_finite(r);
  AffineSystem sys;
  sys.constant = Eigen::Vector3d::Ones();
  sys.matrix.resize(3, 3);
  sys.matrix << r.r1, 0.0, 1.0,
                0.0, r.r2, 1.0,
                r.r4, r.r5, r.r3;
  sys.variable_order = {{0, 0}, {1, 1}, {1, 0}};
  return sys;
}

Coeffs3 closed_form_coeffs(const CanonicalR5& r) {
  const auto [r1, r2, r3, r4, r5] = r.values();
  return {r1 + r2 + r3, r1 * r2 + r1 * r3 + r2 * r3 - r4 - r5, r1 * r2 * r3 - r1 * r4 - r2 * r5};
}

std::array<double, 3> symmetric_equilibrium(const CanonicalR5& r) {
  require_symmetric(r, "symmetric_equilibrium");
  const double numerator = r.r1 - r.r4 - r.r5;
  const double denominator = r.r1 * r.r3 - r.r4 - r.r5;
  const double scale = std::abs(r.r1 * r.r3) + std::abs(r.r4) + std::abs(r.r5);
  if (std::abs(denominator) <= 1e-14 * scale) {
    throw NoUniqueEquilibrium("no unique equilibrium: r1 r3 - r4 - r5 vanishes");
  }
  const double q21 = numerator / denominator;
  const double q11 = (1.0 - q21) / r.r1;
  return {q11, q11, q21};
}

bool symmetric_conditions(const CanonicalR5& r) {
  require_symmetric(r, "symmetric_conditions");
  return r.r1 > r.r4 + r.r5 && r.r3 > 1.0;
}

StabilityReport analyze(const AffineSystem& sys) {
  StabilityReport rep;
  rep.equilibrium = equilibrium(sys);
  if (static_cast<Eigen::Index>(sys.variable_order.size()) == sys.dimension()) {
    rep.variables = variable_names(sys.variable_order);
  } else {
    for (Eigen::Index k = 0; k < sys.dimension(); ++k) rep.variables.push_back("x" + std::to_string(k + 1));
  }
  rep.char_coeffs = char_poly(sys);
  if (rep.char_coeffs.size() == 3) {
    rep.hurwitz_pass = routh_hurwitz_cubic(rep.char_coeffs[0], rep.char_coeffs[1], rep.char_coeffs[2]);
  }
  rep.eigen_margin = eigen_margin(sys);
  rep.verdict = verdict_from_margin(rep.eigen_margin);
  return rep;
}

StabilityReport analyze(const CanonicalR5& r) {
  StabilityReport rep = analyze(canonical_affine(r));
  rep.closed_form_coeffs = closed_form_coeffs(r);
  return rep;
}

}  // namespace cournot
