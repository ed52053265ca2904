#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>

namespace klchernoff {

/// Streaming log-sum-exp: accumulates log(sum_i exp(x_i)) one term at a
/// time, rescaling by the running maximum so no intermediate overflows.
/// Terms are combined in the order they are added.
class LogSumExp {
 public:
  void add(double x) {
    if (x == -std::numeric_limits<double>::infinity()) return;
    if (x > max_) {
      sum_ = sum_ * std::exp(max_ - x) + 1.0;
      max_ = x;
    } else {
      sum_ += std::exp(x - max_);
    }
  }

  // -inf when no finite term was added.
  double value() const {
    if (sum_ == 0.0) return -std::numeric_limits<double>::infinity();
    return max_ + std::log(sum_);
  }

 private:
  double max_ = -std::numeric_limits<double>::infinity();
  double sum_ = 0.0;
};

double log_sum_exp(std::span<const double> xs);

/// log C(n, r) for 0 <= r <= n, via log-gamma.
double log_binomial(double n, double r);

/// log Γ(a, z), the unregularized upper incomplete gamma function, for
/// a > 0 and z >= 0. Series for z < a + 1, continued fraction otherwise;
/// both iterated to 1e-14 relative convergence.
double log_upper_incomplete_gamma(double a, double z);

/// Q(a, z) = Γ(a, z) / Γ(a).
double regularized_gamma_q(double a, double z);

}  // namespace klchernoff
