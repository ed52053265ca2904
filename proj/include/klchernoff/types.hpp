#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace klchernoff {

/// Raised for every precondition violation (bad shapes, λ outside [0,1],
/// thresholds outside a corollary's domain, malformed input data).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Alphabet size k and sample size n of a multinomial experiment.
struct ExperimentShape {
  std::int64_t k = 1;
  std::int64_t n = 0;

  ExperimentShape() = default;
  ExperimentShape(std::int64_t k_, std::int64_t n_);

  friend bool operator==(const ExperimentShape&, const ExperimentShape&) = default;
};

// Throws unless k >= 2 and n >= 1, the domain of every tail bound.
void require_bound_shape(const ExperimentShape& shape);

/// A point of the probability simplex. Entries are nonnegative and sum to
/// one within kSumTolerance.
class ProbVector {
 public:
  static constexpr double kSumTolerance = 1e-12;

  explicit ProbVector(std::vector<double> probs);

  // Empirical distribution counts / sum(counts).
  static ProbVector empirical(std::span<const std::int64_t> counts);
  static ProbVector uniform(std::size_t k);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> values() const { return probs_; }

 private:
  std::vector<double> probs_;
};

}  // namespace klchernoff
