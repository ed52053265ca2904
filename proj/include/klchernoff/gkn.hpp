#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <vector>

#include "klchernoff/types.hpp"

namespace klchernoff {

using Rational = boost::multiprecision::cpp_rational;

/// A polynomial value together with its natural log. Large shapes are
/// consumed through log_value; value may overflow to +inf.
struct GknValue {
  double value;
  double log_value;
};

/// The degree-n polynomial
///
///   G_{k,n}(λ) = Σ_{m=0}^{n} n! / (n^m (n-m)!) · C(m+k-2, k-2) · λ^m,
///
/// which dominates the moment generating function of n·D(p̂‖p) uniformly
/// over p for λ in [0,1]. For k = 1 or n = 0 it is the constant 1.
///
/// Coefficients are kept in log form for every shape; shapes with
/// k, n <= kExactLimit also carry the exact rationals.
class GknEvaluator {
 public:
  static constexpr std::int64_t kExactLimit = 30;

  explicit GknEvaluator(ExperimentShape shape);

  const ExperimentShape& shape() const { return shape_; }
  const std::vector<double>& log_coeffs() const { return log_coeffs_; }
  const std::optional<std::vector<Rational>>& exact_coeffs() const { return exact_coeffs_; }

  /// G(λ) for λ in [0,1]; λ = 0 returns exactly 1.
  GknValue eval(double lambda) const;
  double log_eval(double lambda) const { return eval(lambda).log_value; }

  /// G'(λ) for λ in [0,1]; at λ = 0 this is the linear coefficient k-1.
  double deriv(double lambda) const;

  /// Copy with coefficient m scaled by exp(log_factor). Fault injection
  /// for the verification suite's negative control.
  GknEvaluator perturbed(std::size_t m, double log_factor) const;

 private:
  ExperimentShape shape_;
  std::vector<double> log_coeffs_;
  std::optional<std::vector<Rational>> exact_coeffs_;
};

GknEvaluator build_evaluator(ExperimentShape shape);

GknValue eval_gkn(const GknEvaluator& ev, double lambda);
double eval_gkn_deriv(const GknEvaluator& ev, double lambda);

/// Large-n limit (1-λ)^{-(k-1)}, for λ in [0,1).
double eval_gkn_limit(std::int64_t k, double lambda);

/// G_{2,n}(λ) through n^{-n} λ^n e^{n/λ} Γ(n+1, n/λ), for λ in (0,1].
/// Independent of the coefficient representation.
double eval_g2n_gamma_form(std::int64_t n, double lambda);

/// G_{k,n}(λ) - [G_{k-1,n}(λ) + λ G_{k,n-1}(λ(n-1)/n)].
double recurrence_residual(std::int64_t k, std::int64_t n, double lambda);

}  // namespace klchernoff
