#include "phaseflow/potential.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "phaseflow/errors.hpp"
#include "phaseflow/kernels.hpp"

namespace phaseflow {

namespace {

// (1+s) log(1+s) with the continuous extension 0 at s = -1.
double xlogx_plus(double s) { return s == -1.0 ? 0.0 : (1.0 + s) * std::log1p(s); }

void require_closed_interval(double s, const char* fn)
{
  if (!(std::abs(s) <= 1.0)) {
    std::ostringstream os;
    os << fn << ": argument " << s << " outside [-1, 1]";
    throw DomainError(os.str());
  }
}

void require_open_interval(double s, const char* fn)
{
  if (!(std::abs(s) < kSingularGuard)) {
    std::ostringstream os;
    os.precision(17);
    os << fn << ": singular argument " << s;
    throw SingularArgument(os.str());
  }
}

}  // namespace

std::vector<std::string> PotentialParams::violations() const
{
  std::vector<std::string> out;
  if (!(theta > 0.0)) out.push_back("potential.theta must be positive");
  if (!(theta0 > 0.0)) out.push_back("potential.theta0 must be positive");
  if (theta > 0.0 && theta0 > 0.0 && !(theta < theta0))
    out.push_back("potential: requires 0 < theta < theta0 (non-convex Flory-Huggins regime)");
  if (!(epsilon > 0.0 && epsilon < 0.5)) out.push_back("potential.epsilon must lie in (0, 1/2)");
  return out;
}

void PotentialParams::validate() const
{
  const auto v = violations();
  if (v.empty()) return;
  std::string msg;
  for (const auto& s : v) msg += (msg.empty() ? "" : "; ") + s;
  throw std::invalid_argument(msg);
}

double f_value(double s, const PotentialParams& p)
{
  require_closed_interval(s, "f_value");
  return 0.5 * p.theta * (xlogx_plus(s) + xlogx_plus(-s));
}

double psi(double s, const PotentialParams& p)
{
  require_closed_interval(s, "psi");
  return f_value(s, p) - 0.5 * p.theta0 * s * s;
}

double f1(double s, const PotentialParams& p)
{
  require_open_interval(s, "f1");
  return p.theta * std::atanh(s);  // (theta/2) log((1+s)/(1-s))
}

double psi_prime(double s, const PotentialParams& p)
{
  require_open_interval(s, "psi_prime");
  return f1(s, p) - p.theta0 * s;
}

double f2(double s, const PotentialParams& p)
{
  require_open_interval(s, "f2");
  return p.theta / ((1.0 - s) * (1.0 + s));
}

double f3(double s, const PotentialParams& p)
{
  require_open_interval(s, "f3");
  const double a = (1.0 - s) * (1.0 + s);
  return 2.0 * p.theta * s / (a * a);
}

double f4(double s, const PotentialParams& p)
{
  require_open_interval(s, "f4");
  const double a = (1.0 - s) * (1.0 + s);
  return 2.0 * p.theta * (1.0 + 3.0 * s * s) / (a * a * a);
}

// ---------------------------------------------------------------- F_eps

double f_eps(double s, const PotentialParams& p)
{
  const double a = 1.0 - p.epsilon;
  if (s > a) {
    const double d = s - a;
    return f_value(a, p) + f1(a, p) * d + 0.5 * f2(a, p) * d * d;
  }
  if (s < -a) {
    const double d = s + a;
    return f_value(-a, p) + f1(-a, p) * d + 0.5 * f2(-a, p) * d * d;
  }
  return f_value(s, p);
}

double f_eps1(double s, const PotentialParams& p)
{
  const double a = 1.0 - p.epsilon;
  if (s > a) return f1(a, p) + f2(a, p) * (s - a);
  if (s < -a) return f1(-a, p) + f2(-a, p) * (s + a);
  return f1(s, p);
}

double f_eps2(double s, const PotentialParams& p)
{
  const double a = 1.0 - p.epsilon;
  if (s > a) return f2(a, p);
  if (s < -a) return f2(-a, p);
  return f2(s, p);
}

double convex_value(double s, const PotentialParams& p, PotentialMode mode)
{
  return mode == PotentialMode::singular ? f_value(s, p) : f_eps(s, p);
}

double convex_d1(double s, const PotentialParams& p, PotentialMode mode)
{
  return mode == PotentialMode::singular ? f1(s, p) : f_eps1(s, p);
}

double convex_d2(double s, const PotentialParams& p, PotentialMode mode)
{
  return mode == PotentialMode::singular ? f2(s, p) : f_eps2(s, p);
}

double potential_value(double s, const PotentialParams& p, PotentialMode mode)
{
  return convex_value(s, p, mode) - 0.5 * p.theta0 * s * s;
}

// ---------------------------------------------------------------- entropy

EntropyIntegrals entropy_integrals(const ScalarField& phi, const PotentialParams& p)
{
  const auto v = phi.values();
  if (!(kernels::max_abs(v) < kSingularGuard))
    throw SingularArgument("entropy_integrals: max|phi| >= 1");
  const double da = phi.grid().cell_area();
  EntropyIntegrals out;
  out.l1 = da * kernels::reduce_sum(v.size(), [&](std::size_t i) { return f2(v[i], p); });
  out.sq_log = da * kernels::reduce_sum(v.size(), [&](std::size_t i) {
                 const double q = f2(v[i], p);
                 return q * q * std::log1p(q);
               });
  out.cross = da * kernels::reduce_sum(v.size(), [&](std::size_t i) { return f3(v[i], p) * f1(v[i], p); });
  return out;
}

EntropyConstants entropy_constants(double theta)
{
  PotentialParams p;
  p.theta = theta;
  EntropyConstants c{};
  // F'(s) = theta * atanh(s), so F'(alpha) = 1 has the closed form below
  c.alpha = std::tanh(1.0 / theta);
  c.c0 = std::log(2.0 * theta);
  c.c1 = c.c0 * f3(c.alpha, p);
  c.c2 = 4.0 / theta + c.c0;
  c.c3 = f2(0.5, p);
  c.c4 = 3.0 / (4.0 * f1(0.5, p));
  return c;
}

std::vector<InequalityReport> check_entropy_inequalities(double theta, std::size_t points, double gap)
{
  PotentialParams p;
  p.theta = theta;
  const EntropyConstants c = entropy_constants(theta);
  InequalityReport third{"|F'''| log|F'''| <= C1 + C2 F''' F'", points, 0, std::numeric_limits<double>::infinity(), 0.0};
  InequalityReport second{"F'' <= C3 + C4 F''' F'", points, 0, std::numeric_limits<double>::infinity(), 0.0};
  const double lo = -1.0 + gap, hi = 1.0 - gap;
  for (std::size_t k = 0; k < points; ++k) {
    const double s = points == 1 ? 0.0 : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(points - 1);
    const double d1 = f1(s, p), d2 = f2(s, p), d3 = f3(s, p);
    const double a3 = std::abs(d3);
    const double lhs3 = a3 == 0.0 ? 0.0 : a3 * std::log(a3);
    const double m3 = c.c1 + c.c2 * d3 * d1 - lhs3;
    if (m3 < third.worst_margin) third.worst_margin = m3, third.worst_at = s;
    if (m3 < 0.0) ++third.failures;
    const double m2 = c.c3 + c.c4 * d3 * d1 - d2;
    if (m2 < second.worst_margin) second.worst_margin = m2, second.worst_at = s;
    if (m2 < 0.0) ++second.failures;
  }
  return {third, second};
}

}  // namespace phaseflow
