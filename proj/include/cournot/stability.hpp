#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "cournot/network.hpp"

namespace cournot {

// Rescaled two-firm/two-market system in variables (q11, q22, q21):
//
//   dq11/dt = 1 - r1 q11 - q21
//   dq22/dt = 1 - r2 q22 - q21
//   dq21/dt = 1 - r3 q21 - r4 q11 - r5 q22
//
// r4 and r5 may take either sign.
struct CanonicalR5 {
  double r1 = 0.0;
  double r2 = 0.0;
  double r3 = 0.0;
  double r4 = 0.0;
  double r5 = 0.0;

  std::array<double, 5> values() const { return {r1, r2, r3, r4, r5}; }
  static CanonicalR5 from_values(const std::array<double, 5>& v) {
    return {v[0], v[1], v[2], v[3], v[4]};
  }
  // 0-based parameter access, r1 is index 0.
  double get(int index) const { return values().at(static_cast<std::size_t>(index)); }
  CanonicalR5 with(int index, double value) const;
};

using Coeffs3 = std::array<double, 3>;

enum class Verdict { Stable, Unstable, Marginal };

std::string_view to_string(Verdict verdict);  // "STABLE", "UNSTABLE", "MARGINAL"

inline constexpr double kMarginalBand = 1e-9;
inline constexpr double kConditionLimit = 1e12;

struct StabilityReport {
  FlowVector equilibrium;
  std::vector<std::string> variables;
  std::vector<double> char_coeffs;               // a1..an of det(lambda I - J)
  std::optional<bool> hurwitz_pass;              // cubic Routh-Hurwitz, n == 3 only
  std::optional<Coeffs3> closed_form_coeffs;     // canonical systems only
  double eigen_margin = 0.0;                     // max Re(lambda) of J = -A
  Verdict verdict = Verdict::Marginal;
};

// Solves A q = c with partial pivoting. Throws NoUniqueEquilibrium when A is
// singular or its 1-norm condition number exceeds kConditionLimit.
FlowVector equilibrium(const AffineSystem& sys);

// Coefficients (a1, ..., an) of det(lambda I - J) = lambda^n + a1 lambda^(n-1)
// + ... + an, where J = -A is the Jacobian. Faddeev-LeVerrier recursion.
std::vector<double> char_poly(const AffineSystem& sys);

// a1 > 0, a3 > 0 and a1 a2 > a3, all strict.
bool routh_hurwitz_cubic(double a1, double a2, double a3);

// Largest real part among the eigenvalues of J = -A.
double eigen_margin(const AffineSystem& sys);

Verdict verdict_from_margin(double margin);

std::array<double, 3> canonical_field(const CanonicalR5& r, const std::array<double, 3>& q);

// c = (1, 1, 1), A = ((r1, 0, 1), (0, r2, 1), (r4, r5, r3)); variable order
// (q11, q22, q21).
AffineSystem canonical_affine(const CanonicalR5& r);

// Hurwitz coefficients in closed form with the a3 cross terms written as
// r1 r4 + r2 r5:
//   a1 = r1 + r2 + r3
//   a2 = r1 r2 + r1 r3 + r2 r3 - r4 - r5
//   a3 = r1 r2 r3 - r1 r4 - r2 r5
// The Jacobian of canonical_affine gives a3 = r1 r2 r3 - r1 r5 - r2 r4, so the
// two only agree when r1 == r2. Verdicts always come from char_poly.
Coeffs3 closed_form_coeffs(const CanonicalR5& r);

// Closed-form equilibrium for r1 == r2:
//   q21 = (r1 - r4 - r5) / (r1 r3 - r4 - r5),  q11 = q22 = (1 - q21) / r1
// Returned in (q11, q22, q21) order.
std::array<double, 3> symmetric_equilibrium(const CanonicalR5& r);

// r1 > r4 + r5 and r3 > 1, for r1 == r2.
bool symmetric_conditions(const CanonicalR5& r);

StabilityReport analyze(const AffineSystem& sys);
StabilityReport analyze(const CanonicalR5& r);

}  // namespace cournot
