#include "klchernoff/types.hpp"

#include <cmath>
#include <numeric>

namespace klchernoff {

ExperimentShape::ExperimentShape(std::int64_t k_, std::int64_t n_) : k(k_), n(n_) {
  if (k < 1) throw DomainError("alphabet size k must be >= 1, got " + std::to_string(k));
  if (n < 0) throw DomainError("sample size n must be >= 0, got " + std::to_string(n));
}

void require_bound_shape(const ExperimentShape& shape) {
  if (shape.k < 2 || shape.n < 1) {
    throw DomainError("tail bounds need k >= 2 and n >= 1, got k=" + std::to_string(shape.k) +
                      ", n=" + std::to_string(shape.n));
  }
}

ProbVector::ProbVector(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw DomainError("probability vector must be nonempty");
  double sum = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw DomainError("probability entries must be finite and nonnegative");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw DomainError("probability entries sum to " + std::to_string(sum) + ", not 1");
  }
}

ProbVector ProbVector::empirical(std::span<const std::int64_t> counts) {
  std::int64_t n = 0;
  for (auto c : counts) {
    if (c < 0) throw DomainError("counts must be nonnegative");
    n += c;
  }
  if (n <= 0) throw DomainError("counts must have a positive total");
  std::vector<double> probs(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    probs[i] = static_cast<double>(counts[i]) / static_cast<double>(n);
  }
  return ProbVector(std::move(probs));
}

ProbVector ProbVector::uniform(std::size_t k) {
  if (k == 0) throw DomainError("probability vector must be nonempty");
  return ProbVector(std::vector<double>(k, 1.0 / static_cast<double>(k)));
}

}  // namespace klchernoff
