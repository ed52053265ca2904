#include "klchernoff/gkn.hpp"

#include <cmath>
#include <string>

#include "klchernoff/special_functions.hpp"

namespace klchernoff {
namespace {

void check_lambda(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw DomainError("lambda must lie in [0,1], got " + std::to_string(lambda));
  }
}

}  // namespace

GknEvaluator::GknEvaluator(ExperimentShape shape) : shape_(shape) {
  const std::int64_t k = shape.k;
  const std::int64_t n = shape.n;
  if (k == 1 || n == 0) {
    log_coeffs_ = {0.0};
    if (k <= kExactLimit && n <= kExactLimit) exact_coeffs_ = std::vector<Rational>{Rational(1)};
    return;
  }

  // Consecutive coefficients differ by the factor
  //   c_m / c_{m-1} = (n-m+1)/n · (m+k-2)/m,
  // so the log coefficients are a running sum of log-ratios.
  log_coeffs_.resize(static_cast<std::size_t>(n) + 1);
  log_coeffs_[0] = 0.0;
  const double nd = static_cast<double>(n);
  for (std::int64_t m = 1; m <= n; ++m) {
    const double md = static_cast<double>(m);
    log_coeffs_[m] = log_coeffs_[m - 1] + std::log1p(-(md - 1.0) / nd) +
                     std::log((md + static_cast<double>(k) - 2.0) / md);
  }

  if (k <= kExactLimit && n <= kExactLimit) {
    std::vector<Rational> exact(static_cast<std::size_t>(n) + 1);
    exact[0] = 1;
    for (std::int64_t m = 1; m <= n; ++m) {
      exact[m] = exact[m - 1] * Rational(n - m + 1, n) * Rational(m + k - 2, m);
    }
    exact_coeffs_ = std::move(exact);
  }
}

GknValue GknEvaluator::eval(double lambda) const {
  check_lambda(lambda);
  if (lambda == 0.0) return {1.0, 0.0};
  const double log_lambda = std::log(lambda);
  LogSumExp acc;
  for (std::size_t m = 0; m < log_coeffs_.size(); ++m) {
    acc.add(log_coeffs_[m] + static_cast<double>(m) * log_lambda);
  }
  const double log_value = acc.value();
  return {std::exp(log_value), log_value};
}

double GknEvaluator::deriv(double lambda) const {
  check_lambda(lambda);
  if (log_coeffs_.size() < 2) return 0.0;
  if (lambda == 0.0) return std::exp(log_coeffs_[1]);
  const double log_lambda = std::log(lambda);
  LogSumExp acc;
  for (std::size_t m = 1; m < log_coeffs_.size(); ++m) {
    const double md = static_cast<double>(m);
    acc.add(log_coeffs_[m] + std::log(md) + (md - 1.0) * log_lambda);
  }
  return std::exp(acc.value());
}

GknEvaluator GknEvaluator::perturbed(std::size_t m, double log_factor) const {
  if (m >= log_coeffs_.size()) throw DomainError("coefficient index out of range");
  GknEvaluator copy = *this;
  copy.log_coeffs_[m] += log_factor;
  copy.exact_coeffs_.reset();
  return copy;
}

GknEvaluator build_evaluator(ExperimentShape shape) { return GknEvaluator(shape); }

GknValue eval_gkn(const GknEvaluator& ev, double lambda) { return ev.eval(lambda); }

double eval_gkn_deriv(const GknEvaluator& ev, double lambda) { return ev.deriv(lambda); }

double eval_gkn_limit(std::int64_t k, double lambda) {
  if (k < 2) throw DomainError("large-n limit needs k >= 2");
  if (!(lambda >= 0.0 && lambda < 1.0)) {
    throw DomainError("large-n limit needs lambda in [0,1), got " + std::to_string(lambda));
  }
  return std::exp(-static_cast<double>(k - 1) * std::log1p(-lambda));
}

double eval_g2n_gamma_form(std::int64_t n, double lambda) {
  if (n < 1) throw DomainError("gamma form needs n >= 1");
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    throw DomainError("gamma form needs lambda in (0,1]; use eval_gkn at lambda = 0");
  }
  const double nd = static_cast<double>(n);
  const double z = nd / lambda;
  const double log_value = -nd * std::log(nd) + nd * std::log(lambda) + z +
                           log_upper_incomplete_gamma(nd + 1.0, z);
  return std::exp(log_value);
}

double recurrence_residual(std::int64_t k, std::int64_t n, double lambda) {
  if (k < 2 || n < 1) throw DomainError("recurrence needs k >= 2 and n >= 1");
  check_lambda(lambda);
  const double whole = GknEvaluator({k, n}).eval(lambda).value;
  const double fewer_categories = GknEvaluator({k - 1, n}).eval(lambda).value;
  const double shrunk = lambda * static_cast<double>(n - 1) / static_cast<double>(n);
  const double fewer_samples = GknEvaluator({k, n - 1}).eval(shrunk).value;
  return whole - (fewer_categories + lambda * fewer_samples);
}

}  // namespace klchernoff
