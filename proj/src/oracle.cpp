#include "klchernoff/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

#include "klchernoff/special_functions.hpp"

namespace klchernoff {
namespace {

constexpr std::int64_t kChunkSize = 8192;

void check_same_length(std::size_t k, const ProbVector& p) {
  if (p.size() != k) {
    throw DomainError("probability vector has length " + std::to_string(p.size()) +
                      ", expected " + std::to_string(k));
  }
}

void check_lambda(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw DomainError("lambda must lie in [0,1], got " + std::to_string(lambda));
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

double kl_divergence(const ProbVector& phat, const ProbVector& p) {
  check_same_length(phat.size(), p);
  double sum = 0.0;
  for (std::size_t i = 0; i < phat.size(); ++i) {
    if (phat[i] == 0.0) continue;
    if (p[i] == 0.0) return std::numeric_limits<double>::infinity();
    sum += phat[i] * std::log(phat[i] / p[i]);
  }
  return std::max(sum, 0.0);
}

double scaled_kl_statistic(std::span<const std::int64_t> counts, const ProbVector& p) {
  check_same_length(counts.size(), p);
  std::int64_t n = 0;
  for (auto c : counts) n += c;
  const double nd = static_cast<double>(n);
  double sum = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] == 0) continue;
    if (p[i] == 0.0) return std::numeric_limits<double>::infinity();
    const double x = static_cast<double>(counts[i]);
    sum += x * std::log(x / (nd * p[i]));
  }
  return std::max(sum, 0.0);
}

OutcomeEnumerator::OutcomeEnumerator(ExperimentShape shape) : shape_(shape) {
  total_ = std::exp(log_binomial(static_cast<double>(shape.n + shape.k - 1),
                                 static_cast<double>(shape.k - 1)));
  if (total_ > kMaxOutcomes * (1.0 + 1e-9)) {
    throw DomainError("enumeration of k=" + std::to_string(shape.k) + ", n=" +
                      std::to_string(shape.n) + " exceeds the 1e7 outcome guard");
  }
  total_ = std::round(total_);
  log_factorial_.resize(static_cast<std::size_t>(shape.n) + 1);
  log_factorial_[0] = 0.0;
  for (std::int64_t i = 1; i <= shape.n; ++i) {
    log_factorial_[i] = log_factorial_[i - 1] + std::log(static_cast<double>(i));
  }
}

double OutcomeEnumerator::log_coeff() const {
  double value = log_factorial_[shape_.n];
  for (auto c : counts_) value -= log_factorial_[c];
  return value;
}

std::optional<Outcome> OutcomeEnumerator::next() {
  if (done_) return std::nullopt;
  const auto k = static_cast<std::size_t>(shape_.k);
  if (!started_) {
    started_ = true;
    counts_.assign(k, 0);
    counts_[k - 1] = shape_.n;
  } else {
    // Lexicographic successor: take one unit from the tail behind the last
    // position that can grow, add it there, and push the rest of the tail
    // to the final slot.
    std::size_t last_nonzero = k;
    for (std::size_t i = k; i-- > 1;) {
      if (counts_[i] > 0) {
        last_nonzero = i;
        break;
      }
    }
    if (last_nonzero == k) {
      done_ = true;
      return std::nullopt;
    }
    const std::size_t grow = last_nonzero - 1;
    std::int64_t tail = 0;
    for (std::size_t i = grow + 1; i < k; ++i) {
      tail += counts_[i];
      counts_[i] = 0;
    }
    counts_[grow] += 1;
    counts_[k - 1] = tail - 1;
  }
  return Outcome{counts_, log_coeff()};
}

double mgf_exact(ExperimentShape shape, const ProbVector& p, double lambda) {
  check_same_length(static_cast<std::size_t>(shape.k), p);
  check_lambda(lambda);
  double sum = 0.0;
  for_each_outcome(shape, [&](const Outcome& o) {
    double log_term = o.log_multinomial_coeff;
    for (std::size_t i = 0; i < o.counts.size(); ++i) {
      if (o.counts[i] == 0) continue;
      if (p[i] == 0.0) return;  // outcome has probability zero
      log_term += static_cast<double>(o.counts[i]) * std::log(p[i]);
    }
    log_term += lambda * scaled_kl_statistic(o.counts, p);
    sum += std::exp(log_term);
  });
  return sum;
}

double gkn_from_definition(ExperimentShape shape, const ProbVector& p, double lambda) {
  check_same_length(static_cast<std::size_t>(shape.k), p);
  check_lambda(lambda);
  const double nd = static_cast<double>(shape.n);
  double sum = 0.0;
  for_each_outcome(shape, [&](const Outcome& o) {
    double log_term = o.log_multinomial_coeff;
    for (std::size_t i = 0; i < o.counts.size(); ++i) {
      if (o.counts[i] == 0) continue;  // 0^0 = 1
      const double x = static_cast<double>(o.counts[i]);
      const double base = lambda * x / nd + (1.0 - lambda) * p[i];
      if (base == 0.0) return;
      log_term += x * std::log(base);
    }
    sum += std::exp(log_term);
  });
  return sum;
}

double tail_exact(ExperimentShape shape, const ProbVector& p, double t) {
  check_same_length(static_cast<std::size_t>(shape.k), p);
  double sum = 0.0;
  for_each_outcome(shape, [&](const Outcome& o) {
    if (!(scaled_kl_statistic(o.counts, p) > t)) return;
    double log_prob = o.log_multinomial_coeff;
    for (std::size_t i = 0; i < o.counts.size(); ++i) {
      if (o.counts[i] == 0) continue;
      if (p[i] == 0.0) return;
      log_prob += static_cast<double>(o.counts[i]) * std::log(p[i]);
    }
    sum += std::exp(log_prob);
  });
  return std::clamp(sum, 0.0, 1.0);
}

std::vector<std::int64_t> sample_multinomial(std::int64_t n, const ProbVector& p,
                                             std::mt19937_64& rng) {
  std::vector<std::int64_t> counts(p.size(), 0);
  std::int64_t remaining = n;
  double mass = 1.0;
  for (std::size_t i = 0; i + 1 < p.size() && remaining > 0; ++i) {
    if (p[i] > 0.0) {
      const double q = mass > 0.0 ? std::clamp(p[i] / mass, 0.0, 1.0) : 1.0;
      std::binomial_distribution<std::int64_t> draw(remaining, q);
      counts[i] = draw(rng);
      remaining -= counts[i];
    }
    mass -= p[i];
  }
  counts.back() += remaining;
  return counts;
}

McEstimate mc_tail(ExperimentShape shape, const ProbVector& p, double t, std::int64_t samples,
                   std::uint64_t seed, unsigned threads) {
  check_same_length(static_cast<std::size_t>(shape.k), p);
  if (samples < 1) throw DomainError("mc_tail needs at least one sample");
  threads = std::max(1u, threads);

  const std::int64_t chunks = (samples + kChunkSize - 1) / kChunkSize;
  std::vector<std::int64_t> hits(static_cast<std::size_t>(chunks), 0);
  auto run_chunk = [&](std::int64_t chunk) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(splitmix64(static_cast<std::uint64_t>(chunk)))};
    std::mt19937_64 rng(seq);
    const std::int64_t begin = chunk * kChunkSize;
    const std::int64_t end = std::min(samples, begin + kChunkSize);
    std::int64_t count = 0;
    for (std::int64_t s = begin; s < end; ++s) {
      const auto draw = sample_multinomial(shape.n, p, rng);
      if (scaled_kl_statistic(draw, p) > t) ++count;
    }
    hits[static_cast<std::size_t>(chunk)] = count;
  };

  if (threads == 1 || chunks == 1) {
    for (std::int64_t c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::vector<std::jthread> workers;
    for (unsigned w = 0; w < threads; ++w) {
      workers.emplace_back([&, w] {
        for (std::int64_t c = w; c < chunks; c += threads) run_chunk(c);
      });
    }
  }

  std::int64_t total_hits = 0;
  for (auto h : hits) total_hits += h;
  const double estimate = static_cast<double>(total_hits) / static_cast<double>(samples);
  const double se = std::sqrt(estimate * (1.0 - estimate) / static_cast<double>(samples));
  return {estimate, se, samples, total_hits};
}

ProbVector random_simplex_point(std::size_t k, std::mt19937_64& rng) {
  std::exponential_distribution<double> exponential(1.0);
  std::vector<double> draws(k);
  double sum = 0.0;
  for (auto& d : draws) {
    d = exponential(rng);
    sum += d;
  }
  for (auto& d : draws) d /= sum;
  return ProbVector(std::move(draws));
}

}  // namespace klchernoff
