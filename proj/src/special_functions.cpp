#include "klchernoff/special_functions.hpp"

#include <string>

#include "klchernoff/types.hpp"

namespace klchernoff {
namespace {

constexpr double kConvergence = 1e-14;
constexpr int kMaxIterations = 1'000'000;
constexpr double kTiny = 1e-300;

// log γ(a, z) by the power series
//   γ(a, z) = e^{-z} z^a Σ_j z^j / (a (a+1) ... (a+j)).
double log_lower_gamma_series(double a, double z) {
  double term = 1.0 / a;
  double sum = term;
  for (int j = 1; j < kMaxIterations; ++j) {
    term *= z / (a + j);
    sum += term;
    if (std::abs(term) < std::abs(sum) * kConvergence) {
      return -z + a * std::log(z) + std::log(sum);
    }
  }
  throw DomainError("incomplete gamma series did not converge");
}

// log Γ(a, z) by the Legendre continued fraction, modified Lentz.
double log_upper_gamma_fraction(double a, double z) {
  double b = z + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kConvergence) {
      return -z + a * std::log(z) + std::log(h);
    }
  }
  throw DomainError("incomplete gamma continued fraction did not converge");
}

}  // namespace

double log_sum_exp(std::span<const double> xs) {
  LogSumExp acc;
  for (double x : xs) acc.add(x);
  return acc.value();
}

double log_binomial(double n, double r) {
  if (r < 0 || r > n) throw DomainError("log_binomial needs 0 <= r <= n");
  return std::lgamma(n + 1.0) - std::lgamma(r + 1.0) - std::lgamma(n - r + 1.0);
}

double log_upper_incomplete_gamma(double a, double z) {
  if (!(a > 0.0)) throw DomainError("incomplete gamma needs a > 0");
  if (!(z >= 0.0)) throw DomainError("incomplete gamma needs z >= 0");
  const double log_gamma_a = std::lgamma(a);
  if (z == 0.0) return log_gamma_a;
  if (z < a + 1.0) {
    const double log_p = log_lower_gamma_series(a, z) - log_gamma_a;
    return log_gamma_a + std::log1p(-std::exp(log_p));
  }
  return log_upper_gamma_fraction(a, z);
}

double regularized_gamma_q(double a, double z) {
  return std::exp(log_upper_incomplete_gamma(a, z) - std::lgamma(a));
}

}  // namespace klchernoff
