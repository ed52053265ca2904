#include "klchernoff/tail_bounds.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "klchernoff/special_functions.hpp"

namespace klchernoff {
namespace {

constexpr std::size_t kGridPoints = 512;
constexpr double kGoldenTolerance = 1e-12;

struct MethodEntry {
  BoundMethod method;
  std::string_view name;
};

constexpr std::array<MethodEntry, 8> kMethods{{
    {BoundMethod::exact, "exact"},
    {BoundMethod::corrected, "corrected"},
    {BoundMethod::uncorrected, "uncorrected"},
    {BoundMethod::lambda_one, "lambda_one"},
    {BoundMethod::types, "types"},
    {BoundMethod::mardia, "mardia"},
    {BoundMethod::agrawal_limit, "agrawal_limit"},
    {BoundMethod::asymp_gamma, "asymp_gamma"},
}};

void check_t(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw DomainError("deviation threshold t must be positive and finite, got " +
                      std::to_string(t));
  }
}

void check_plug_in_domain(const ExperimentShape& shape, double t, std::string_view method) {
  if (!(t > static_cast<double>(shape.k - 1))) {
    throw DomainError(std::string(method) + " bound is only defined for t > k-1 (t=" +
                      std::to_string(t) + ", k=" + std::to_string(shape.k) +
                      "); use the exact bound instead");
  }
}

BoundResult plug_in(BoundMethod method, const GknEvaluator& ev, double t, double lambda) {
  return BoundResult::from_log(method, ev.log_eval(lambda) - lambda * t, lambda);
}

struct Minimum {
  double lambda;
  double log_value;
};

template <typename F>
Minimum golden_section(F&& f, double lo, double hi) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > kGoldenTolerance) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    }
  }
  return f1 <= f2 ? Minimum{x1, f1} : Minimum{x2, f2};
}

}  // namespace

std::string_view method_name(BoundMethod method) {
  for (const auto& entry : kMethods) {
    if (entry.method == method) return entry.name;
  }
  return "unknown";
}

BoundMethod parse_method(std::string_view name) {
  for (const auto& entry : kMethods) {
    if (entry.name == name) return entry.method;
  }
  throw DomainError("unknown bound method '" + std::string(name) + "'");
}

const std::vector<BoundMethod>& all_methods() {
  static const std::vector<BoundMethod> methods = [] {
    std::vector<BoundMethod> out;
    for (const auto& entry : kMethods) out.push_back(entry.method);
    return out;
  }();
  return methods;
}

bool is_reference_only(BoundMethod method) { return method == BoundMethod::asymp_gamma; }

bool uses_lambda(BoundMethod method) {
  return method == BoundMethod::exact || method == BoundMethod::corrected ||
         method == BoundMethod::uncorrected || method == BoundMethod::lambda_one;
}

TailQuery::TailQuery(ExperimentShape shape_, double t_) : shape(shape_), t(t_) { check_t(t); }

BoundResult BoundResult::from_log(BoundMethod method, double log_value,
                                  std::optional<double> lambda) {
  BoundResult r;
  r.method = method;
  r.log_value = log_value;
  r.value = log_value >= 0.0 ? 1.0 : std::exp(log_value);
  r.lambda_used = lambda;
  r.meaningful = r.value < 1.0;
  return r;
}

BoundResult chernoff_exact(const GknEvaluator& ev, double t) {
  require_bound_shape(ev.shape());
  check_t(t);
  auto objective = [&](double lambda) { return ev.log_eval(lambda) - lambda * t; };

  // The objective can have several local minima on [0,1]: scan a uniform
  // grid, then refine around every grid-local minimum.
  std::array<double, kGridPoints> grid{};
  std::array<double, kGridPoints> values{};
  const double step = 1.0 / static_cast<double>(kGridPoints - 1);
  for (std::size_t i = 0; i < kGridPoints; ++i) {
    grid[i] = i + 1 == kGridPoints ? 1.0 : static_cast<double>(i) * step;
    values[i] = objective(grid[i]);
  }

  Minimum best{0.0, values[0]};
  for (std::size_t i = 0; i < kGridPoints; ++i) {
    if (values[i] < best.log_value) best = {grid[i], values[i]};
    const bool left_ok = i == 0 || values[i] <= values[i - 1];
    const bool right_ok = i + 1 == kGridPoints || values[i] <= values[i + 1];
    if (!left_ok || !right_ok) continue;
    const double lo = grid[i == 0 ? 0 : i - 1];
    const double hi = grid[i + 1 == kGridPoints ? i : i + 1];
    const Minimum refined = golden_section(objective, lo, hi);
    if (refined.log_value < best.log_value) best = refined;
  }
  return BoundResult::from_log(BoundMethod::exact, std::min(best.log_value, 0.0), best.lambda);
}

BoundResult chernoff_exact(const TailQuery& q) { return chernoff_exact(GknEvaluator(q.shape), q.t); }

BoundResult chernoff_uncorrected(const GknEvaluator& ev, double t) {
  require_bound_shape(ev.shape());
  check_t(t);
  check_plug_in_domain(ev.shape(), t, "uncorrected");
  const double lambda = 1.0 - static_cast<double>(ev.shape().k - 1) / t;
  return plug_in(BoundMethod::uncorrected, ev, t, lambda);
}

BoundResult chernoff_uncorrected(const TailQuery& q) {
  return chernoff_uncorrected(GknEvaluator(q.shape), q.t);
}

BoundResult chernoff_corrected(const GknEvaluator& ev, double t) {
  require_bound_shape(ev.shape());
  check_t(t);
  check_plug_in_domain(ev.shape(), t, "corrected");
  const double k = static_cast<double>(ev.shape().k);
  const double n = static_cast<double>(ev.shape().n);
  const double lambda =
      std::min(1.0 - (k - 1.0) / t + (k / (k - 1.0)) * (t - k + 1.0) / n, 1.0);
  return plug_in(BoundMethod::corrected, ev, t, lambda);
}

BoundResult chernoff_corrected(const TailQuery& q) {
  return chernoff_corrected(GknEvaluator(q.shape), q.t);
}

BoundResult lambda_one_bound(const GknEvaluator& ev, double t) {
  require_bound_shape(ev.shape());
  check_t(t);
  return plug_in(BoundMethod::lambda_one, ev, t, 1.0);
}

BoundResult lambda_one_bound(const TailQuery& q) {
  return lambda_one_bound(GknEvaluator(q.shape), q.t);
}

double log_types_factor(std::int64_t k, std::int64_t n) {
  return log_binomial(static_cast<double>(n + k - 1), static_cast<double>(k - 1));
}

BoundResult types_bound(const TailQuery& q) {
  require_bound_shape(q.shape);
  return BoundResult::from_log(BoundMethod::types, log_types_factor(q.shape.k, q.shape.n) - q.t);
}

double log_mardia_factor(std::int64_t k, std::int64_t n) {
  if (k < 2 || n < 1) throw DomainError("Mardia factor needs k >= 2 and n >= 1");
  // C_M = 12/π Σ_{i=0}^{k-2} K_{i-1} x^i with x = e√n / 2π, K_{-1} = 1,
  // K_0 = π, K_1 = 2π and K_j = K_{j-2} · 2π / j.
  const double two_pi = 2.0 * std::numbers::pi;
  const double log_x = 1.0 + 0.5 * std::log(static_cast<double>(n)) - std::log(two_pi);
  // log_k[j + 1] holds log K_j.
  std::vector<double> log_k(static_cast<std::size_t>(k));
  LogSumExp acc;
  for (std::int64_t i = 0; i <= k - 2; ++i) {
    const std::int64_t j = i - 1;
    double& entry = log_k[static_cast<std::size_t>(i)];
    if (j == -1) {
      entry = 0.0;
    } else if (j == 0) {
      entry = std::log(std::numbers::pi);
    } else if (j == 1) {
      entry = std::log(two_pi);
    } else {
      entry = log_k[static_cast<std::size_t>(i - 2)] + std::log(two_pi) -
              std::log(static_cast<double>(j));
    }
    acc.add(entry + static_cast<double>(i) * log_x);
  }
  return std::log(12.0 / std::numbers::pi) + acc.value();
}

double mardia_factor(std::int64_t k, std::int64_t n) { return std::exp(log_mardia_factor(k, n)); }

BoundResult mardia_bound(const TailQuery& q) {
  require_bound_shape(q.shape);
  return BoundResult::from_log(BoundMethod::mardia, log_mardia_factor(q.shape.k, q.shape.n) - q.t);
}

BoundResult agrawal_limit_bound(const TailQuery& q) {
  if (q.shape.k < 2) throw DomainError("Agrawal limit bound needs k >= 2");
  const double dof = static_cast<double>(q.shape.k - 1);
  if (q.t <= dof) return BoundResult::from_log(BoundMethod::agrawal_limit, 0.0);
  return BoundResult::from_log(BoundMethod::agrawal_limit,
                               dof - q.t + dof * std::log(q.t / dof));
}

double asymp_gamma_tail(std::int64_t k, double t) {
  if (k < 2) throw DomainError("asymptotic gamma tail needs k >= 2");
  check_t(t);
  return regularized_gamma_q(0.5 * static_cast<double>(k - 1), t);
}

BoundResult asymp_gamma_bound(const TailQuery& q) {
  if (q.shape.k < 2) throw DomainError("asymptotic gamma tail needs k >= 2");
  const double a = 0.5 * static_cast<double>(q.shape.k - 1);
  return BoundResult::from_log(BoundMethod::asymp_gamma,
                               log_upper_incomplete_gamma(a, q.t) - std::lgamma(a));
}

BoundResult compute_bound(BoundMethod method, const GknEvaluator& ev, double t) {
  switch (method) {
    case BoundMethod::exact:
      return chernoff_exact(ev, t);
    case BoundMethod::corrected:
      return chernoff_corrected(ev, t);
    case BoundMethod::uncorrected:
      return chernoff_uncorrected(ev, t);
    case BoundMethod::lambda_one:
      return lambda_one_bound(ev, t);
    case BoundMethod::types:
      return types_bound({ev.shape(), t});
    case BoundMethod::mardia:
      return mardia_bound({ev.shape(), t});
    case BoundMethod::agrawal_limit:
      return agrawal_limit_bound({ev.shape(), t});
    case BoundMethod::asymp_gamma:
      return asymp_gamma_bound({ev.shape(), t});
  }
  throw DomainError("unhandled bound method");
}

double meaningful_threshold(const GknEvaluator& ev) {
  require_bound_shape(ev.shape());
  return std::min(ev.log_eval(1.0), static_cast<double>(ev.shape().k - 1));
}

double meaningful_threshold(const ExperimentShape& shape) {
  return meaningful_threshold(GknEvaluator(shape));
}

double unity_threshold(BoundMethod method, const GknEvaluator& ev) {
  require_bound_shape(ev.shape());
  const auto [k, n] = ev.shape();
  switch (method) {
    case BoundMethod::exact:
      return meaningful_threshold(ev);
    case BoundMethod::corrected:
    case BoundMethod::uncorrected:
    case BoundMethod::agrawal_limit:
      return static_cast<double>(k - 1);
    case BoundMethod::lambda_one:
      return ev.log_eval(1.0);
    case BoundMethod::types:
      return log_types_factor(k, n);
    case BoundMethod::mardia:
      return log_mardia_factor(k, n);
    case BoundMethod::asymp_gamma:
      return 0.0;
  }
  throw DomainError("unhandled bound method");
}

}  // namespace klchernoff
