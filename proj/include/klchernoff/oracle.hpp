#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "klchernoff/types.hpp"

namespace klchernoff {

/// Σ_{i: p̂_i > 0} p̂_i log(p̂_i / p_i) in nats, with 0·log 0 = 0. Returns
/// +inf when p̂ puts mass where p has none.
double kl_divergence(const ProbVector& phat, const ProbVector& p);

/// n·D(p̂‖p) for the empirical distribution of `counts`.
double scaled_kl_statistic(std::span<const std::int64_t> counts, const ProbVector& p);

struct Outcome {
  std::vector<std::int64_t> counts;
  double log_multinomial_coeff = 0.0;
};

/// Walks every composition of n into k nonnegative parts exactly once, in
/// lexicographic order: (0,…,0,n) first, (n,0,…,0) last.
class OutcomeEnumerator {
 public:
  static constexpr double kMaxOutcomes = 1e7;

  explicit OutcomeEnumerator(ExperimentShape shape);

  std::optional<Outcome> next();

  // C(n+k-1, k-1).
  double total() const { return total_; }

 private:
  double log_coeff() const;

  ExperimentShape shape_;
  std::vector<double> log_factorial_;
  std::vector<std::int64_t> counts_;
  double total_ = 0.0;
  bool started_ = false;
  bool done_ = false;
};

template <typename F>
void for_each_outcome(ExperimentShape shape, F&& f) {
  OutcomeEnumerator outcomes(shape);
  while (auto outcome = outcomes.next()) f(*outcome);
}

/// E exp(λ n D(p̂‖p)) under Mult(n, p), summed over all outcomes.
double mgf_exact(ExperimentShape shape, const ProbVector& p, double lambda);

/// Σ_X C(n; X) Π_i [λ X_i/n + (1-λ) p_i]^{X_i}, with 0^0 = 1.
double gkn_from_definition(ExperimentShape shape, const ProbVector& p, double lambda);

/// P(n·D(p̂‖p) > t) by enumeration.
double tail_exact(ExperimentShape shape, const ProbVector& p, double t);

struct McEstimate {
  double estimate;
  double std_error;
  std::int64_t samples;
  std::int64_t hits;
};

/// Monte Carlo estimate of P(n·D(p̂‖p) > t). Samples are drawn in fixed
/// chunks, each with its own generator seeded from (seed, chunk index), so
/// the estimate depends only on (seed, samples) and not on `threads`.
McEstimate mc_tail(ExperimentShape shape, const ProbVector& p, double t, std::int64_t samples,
                   std::uint64_t seed, unsigned threads = 1);

/// One multinomial draw by sequential binomial conditioning.
std::vector<std::int64_t> sample_multinomial(std::int64_t n, const ProbVector& p,
                                             std::mt19937_64& rng);

/// Symmetric Dirichlet(1) draw via normalized exponentials.
ProbVector random_simplex_point(std::size_t k, std::mt19937_64& rng);

}  // namespace klchernoff
