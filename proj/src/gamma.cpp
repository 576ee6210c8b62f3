#include "derange/gamma.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace derange {
namespace {

constexpr int kMaxIter = 10000;
constexpr double kEps = 1e-16;

// P(a,x) by the power series, for x < a + 1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double term = sum;
  for (int i = 0; i < kMaxIter; ++i) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * kEps)
      return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
  }
  throw std::runtime_error("gamma_p_series: no convergence");
}

// Q(a,x) by the continued fraction, modified Lentz, for x >= a + 1.
double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEps)
      return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
  }
  throw std::runtime_error("gamma_q_cf: no convergence");
}

}  // namespace

double regularized_gamma_p(double a, double x) {
  if (!(a > 0.0) || x < 0.0 || !std::isfinite(x))
    throw std::invalid_argument("regularized_gamma_p: need a > 0, x >= 0");
  if (x == 0.0) return 0.0;
  return (x < a + 1.0) ? gamma_p_series(a, x) : 1.0 - gamma_q_cf(a, x);
}

double regularized_gamma_q(double a, double x) {
  if (!(a > 0.0) || x < 0.0 || !std::isfinite(x))
    throw std::invalid_argument("regularized_gamma_q: need a > 0, x >= 0");
  if (x == 0.0) return 1.0;
  return (x < a + 1.0) ? 1.0 - gamma_p_series(a, x) : gamma_q_cf(a, x);
}

double chi_squared_sf(double x, double dof) {
  if (!(dof > 0.0)) throw std::invalid_argument("chi_squared_sf: dof must be positive");
  return regularized_gamma_q(0.5 * dof, 0.5 * x);
}

}  // namespace derange
