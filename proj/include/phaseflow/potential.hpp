#pragma once

// Flory-Huggins potential
//
//   Psi(s) = (theta/2) [(1+s) log(1+s) + (1-s) log(1-s)] - (theta0/2) s^2,
//
// its convex (entropic) part F, derivatives of F up to fourth order, the C^2
// regularization F_eps, and the entropy functionals built from F.
//
// Psi and F are extended continuously to s = +-1 (0 log 0 = 0). Derivatives of
// F reject |s| >= 1 - 1e-15 with SingularArgument instead of returning inf.

#include <string>
#include <vector>

#include "phaseflow/grid.hpp"

namespace phaseflow {

enum class PotentialMode { singular, regularized };

struct PotentialParams {
  double theta = 1.0;
  double theta0 = 2.0;
  double epsilon = 0.01;  ///< width of the regularization collar, only used by F_eps

  /// Human-readable list of violated invariants; empty when valid.
  std::vector<std::string> violations() const;
  /// Throws std::invalid_argument listing every violation.
  void validate() const;
};

/// Largest |s| accepted by the derivative evaluators.
inline constexpr double kSingularGuard = 1.0 - 1e-15;

double psi(double s, const PotentialParams& p);
double psi_prime(double s, const PotentialParams& p);

double f_value(double s, const PotentialParams& p);
double f1(double s, const PotentialParams& p);
double f2(double s, const PotentialParams& p);
double f3(double s, const PotentialParams& p);
double f4(double s, const PotentialParams& p);

/// Regularized convex part: F on [-1+eps, 1-eps], its second-order Taylor
/// polynomial about the nearest collar point outside.
double f_eps(double s, const PotentialParams& p);
double f_eps1(double s, const PotentialParams& p);
double f_eps2(double s, const PotentialParams& p);

/// Convex part and its first two derivatives for the given mode.
double convex_value(double s, const PotentialParams& p, PotentialMode mode);
double convex_d1(double s, const PotentialParams& p, PotentialMode mode);
double convex_d2(double s, const PotentialParams& p, PotentialMode mode);
/// Full potential for the given mode (F or F_eps, minus theta0 s^2 / 2).
double potential_value(double s, const PotentialParams& p, PotentialMode mode);

struct EntropyIntegrals {
  double l1 = 0.0;      ///< integral of F''(phi)
  double sq_log = 0.0;  ///< integral of F''(phi)^2 log(1 + F''(phi))
  double cross = 0.0;   ///< integral of F'''(phi) F'(phi)
};

/// Grid quadrature of the three entropy functionals; requires max|phi| < 1.
EntropyIntegrals entropy_integrals(const ScalarField& phi, const PotentialParams& p);

/// Constants of the pointwise entropy inequalities
///   |F'''| log|F'''| <= c1 + c2 F''' F'     and     F'' <= c3 + c4 F''' F'.
struct EntropyConstants {
  double alpha;  ///< F'(alpha) = 1
  double c0;     ///< log(2 theta)
  double c1;     ///< c0 F'''(alpha)
  double c2;     ///< 4/theta + c0
  double c3;     ///< F''(1/2)
  double c4;     ///< 3 / (4 F'(1/2))
};

EntropyConstants entropy_constants(double theta);

struct InequalityReport {
  std::string name;
  std::size_t points = 0;
  std::size_t failures = 0;
  double worst_margin = 0.0;  ///< min over samples of rhs - lhs
  double worst_at = 0.0;
  bool pass() const { return failures == 0; }
};

/// Samples both inequalities on `points` uniformly spaced values of
/// (-1 + gap, 1 - gap), endpoints included.
std::vector<InequalityReport> check_entropy_inequalities(double theta, std::size_t points, double gap = 1e-6);

}  // namespace phaseflow
