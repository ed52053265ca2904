#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "klchernoff/gkn.hpp"

namespace klchernoff {

/// Which upper bound on P(n·D(p̂‖p) > t) produced a result.
enum class BoundMethod {
  exact,          // min over λ in [0,1] of e^{-λt} G(λ)
  corrected,      // plug-in λ with first-order 1/n correction
  uncorrected,    // plug-in λ = 1 - (k-1)/t
  lambda_one,     // G(1) e^{-t}
  types,          // C(n+k-1, k-1) e^{-t}
  mardia,         // C_M(k,n) e^{-t}
  agrawal_limit,  // Chernoff bound on the n = ∞ polynomial
  asymp_gamma,    // Q((k-1)/2, t); a reference curve, not a bound
};

std::string_view method_name(BoundMethod method);
BoundMethod parse_method(std::string_view name);
const std::vector<BoundMethod>& all_methods();

// The asymptotic gamma tail may undershoot the true probability.
bool is_reference_only(BoundMethod method);
bool uses_lambda(BoundMethod method);

struct TailQuery {
  ExperimentShape shape;
  double t;

  TailQuery(ExperimentShape shape_, double t_);
};

struct BoundResult {
  double value = 1.0;  // min(exp(log_value), 1)
  double log_value = 0.0;
  BoundMethod method = BoundMethod::exact;
  std::optional<double> lambda_used;
  bool meaningful = false;  // value < 1

  static BoundResult from_log(BoundMethod method, double log_value,
                              std::optional<double> lambda = std::nullopt);
};

// Each bound has an overload on a prebuilt evaluator so that repeated
// queries on one shape (sweeps, critical-value searches) skip the
// coefficient build.
BoundResult chernoff_exact(const GknEvaluator& ev, double t);
BoundResult chernoff_exact(const TailQuery& q);

BoundResult chernoff_uncorrected(const GknEvaluator& ev, double t);
BoundResult chernoff_uncorrected(const TailQuery& q);

BoundResult chernoff_corrected(const GknEvaluator& ev, double t);
BoundResult chernoff_corrected(const TailQuery& q);

BoundResult lambda_one_bound(const GknEvaluator& ev, double t);
BoundResult lambda_one_bound(const TailQuery& q);

BoundResult types_bound(const TailQuery& q);
BoundResult mardia_bound(const TailQuery& q);
BoundResult agrawal_limit_bound(const TailQuery& q);
BoundResult asymp_gamma_bound(const TailQuery& q);

/// Dispatch by method tag.
BoundResult compute_bound(BoundMethod method, const GknEvaluator& ev, double t);

double log_types_factor(std::int64_t k, std::int64_t n);
double log_mardia_factor(std::int64_t k, std::int64_t n);
double mardia_factor(std::int64_t k, std::int64_t n);

/// Regularized upper incomplete gamma Q((k-1)/2, t): the n → ∞ tail of
/// n·D(p̂‖p) ~ Ga((k-1)/2, 1).
double asymp_gamma_tail(std::int64_t k, double t);

/// min(log G_{k,n}(1), k-1); the exact bound is below 1 for every larger t.
double meaningful_threshold(const ExperimentShape& shape);
double meaningful_threshold(const GknEvaluator& ev);

/// The point where a method's raw bound reaches 1: for every t above it the
/// bound is < 1 and strictly decreasing.
double unity_threshold(BoundMethod method, const GknEvaluator& ev);

}  // namespace klchernoff
