#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "klchernoff/inversion.hpp"
#include "klchernoff/oracle.hpp"

using namespace klchernoff;

TEST(ProbVector, Validation) {
  EXPECT_THROW(ProbVector(std::vector<double>{0.5, 0.6}), DomainError);
  EXPECT_THROW(ProbVector(std::vector<double>{-0.1, 1.1}), DomainError);
  EXPECT_THROW(ProbVector(std::vector<double>{}), DomainError);
  EXPECT_NO_THROW(ProbVector(std::vector<double>{0.5, 0.5 + 1e-13}));
  const std::vector<std::int64_t> counts{1, 3, 0};
  const ProbVector e = ProbVector::empirical(counts);
  EXPECT_DOUBLE_EQ(e[1], 0.75);
}

TEST(KlDivergence, Conventions) {
  const ProbVector p(std::vector<double>{0.2, 0.8});
  EXPECT_EQ(kl_divergence(p, p), 0.0);
  EXPECT_NEAR(kl_divergence(ProbVector({1.0, 0.0}), ProbVector({0.5, 0.5})), std::log(2.0), 1e-15);
  EXPECT_EQ(kl_divergence(ProbVector({0.0, 1.0}), ProbVector({1.0, 0.0})), INFINITY);
  EXPECT_THROW(kl_divergence(p, ProbVector::uniform(3)), DomainError);
}

TEST(OutcomeEnumerator, LexicographicCompositions) {
  std::vector<std::vector<std::int64_t>> seen;
  for_each_outcome(ExperimentShape(2, 2), [&](const Outcome& o) { seen.push_back(o.counts); });
  EXPECT_EQ(seen, (std::vector<std::vector<std::int64_t>>{{0, 2}, {1, 1}, {2, 0}}));

  std::set<std::vector<std::int64_t>> distinct;
  std::vector<std::int64_t> prev;
  for_each_outcome(ExperimentShape(4, 6), [&](const Outcome& o) {
    std::int64_t sum = 0;
    for (auto c : o.counts) sum += c;
    EXPECT_EQ(sum, 6);
    if (!prev.empty()) EXPECT_LT(prev, o.counts);
    prev = o.counts;
    distinct.insert(o.counts);
  });
  EXPECT_EQ(distinct.size(), 84u);  // C(9,3)

  int count = 0;
  for_each_outcome(ExperimentShape(3, 2), [&](const Outcome&) { ++count; });
  EXPECT_EQ(count, 6);

  count = 0;
  for_each_outcome(ExperimentShape(1, 5), [&](const Outcome& o) {
    ++count;
    EXPECT_EQ(o.counts, std::vector<std::int64_t>{5});
  });
  EXPECT_EQ(count, 1);
}

TEST(OutcomeEnumerator, MultinomialCoefficients) {
  for_each_outcome(ExperimentShape(2, 2), [&](const Outcome& o) {
    const double expected = o.counts[0] == 1 ? 2.0 : 1.0;
    EXPECT_NEAR(std::exp(o.log_multinomial_coeff), expected, 1e-13);
  });
  // Coefficients sum to k^n.
  double sum = 0.0;
  for_each_outcome(ExperimentShape(3, 7), [&](const Outcome& o) { sum += std::exp(o.log_multinomial_coeff); });
  EXPECT_NEAR(sum, std::pow(3.0, 7), 1e-8);
}

TEST(OutcomeEnumerator, Guard) {
  EXPECT_THROW(OutcomeEnumerator(ExperimentShape(20, 100)), DomainError);
  EXPECT_NO_THROW(OutcomeEnumerator(ExperimentShape(4, 100)));
}

TEST(MgfExact, Examples) {
  const ProbVector half = ProbVector::uniform(2);
  for (double lambda : {0.0, 0.3, 1.0}) {
    EXPECT_NEAR(mgf_exact(ExperimentShape(2, 1), half, lambda), std::pow(2.0, lambda), 1e-14);
  }
  std::mt19937_64 rng(3);
  EXPECT_NEAR(mgf_exact(ExperimentShape(4, 5), random_simplex_point(4, rng), 0.0), 1.0, 1e-13);

  // λ = 1: Σ coeff · Π p̂_i^{X_i} = 1 + 2·(1/4) + 1.
  double expected = 0.0;
  for_each_outcome(ExperimentShape(2, 2), [&](const Outcome& o) {
    double term = std::exp(o.log_multinomial_coeff);
    for (auto c : o.counts) term *= std::pow(c / 2.0, static_cast<double>(c));
    expected += term;
  });
  const double mgf = mgf_exact(ExperimentShape(2, 2), half, 1.0);
  EXPECT_NEAR(mgf, expected, 1e-14);
  EXPECT_NEAR(mgf, 2.5, 1e-14);
  EXPECT_LE(mgf, GknEvaluator({2, 2}).eval(1.0).value * (1 + 1e-12));
}

TEST(MgfExact, AtLambdaOneIndependentOfP) {
  std::mt19937_64 rng(5);
  const double ref = mgf_exact(ExperimentShape(3, 4), ProbVector::uniform(3), 1.0);
  for (int i = 0; i < 10; ++i) {
    EXPECT_NEAR(mgf_exact(ExperimentShape(3, 4), random_simplex_point(3, rng), 1.0), ref, 1e-12);
  }
}

TEST(GknFromDefinition, Examples) {
  EXPECT_NEAR(gkn_from_definition(ExperimentShape(2, 2), ProbVector({0.3, 0.7}), 0.5), 1.625, 1e-14);
  std::mt19937_64 rng(9);
  for (double lambda : {0.0, 0.25, 0.8, 1.0}) {
    const ProbVector p = random_simplex_point(3, rng);
    EXPECT_NEAR(gkn_from_definition(ExperimentShape(3, 1), p, lambda), 1.0 + 2.0 * lambda, 1e-14);
    EXPECT_NEAR(gkn_from_definition(ExperimentShape(4, 6), random_simplex_point(4, rng), 0.0), 1.0,
                1e-13);
  }
}

TEST(GknFromDefinition, IndependentOfPAndMatchesPolynomial) {
  std::mt19937_64 rng(13);
  for (int k = 2; k <= 4; ++k) {
    for (int n = 1; n <= 8; ++n) {
      const ExperimentShape shape(k, n);
      const GknEvaluator ev(shape);
      std::vector<double> boundary(k, 1.0 / (k - 1));
      boundary[0] = 0.0;
      for (double lambda : {0.0, 0.2, 0.5, 0.9, 1.0}) {
        const double poly = ev.eval(lambda).value;
        for (int i = 0; i < 25; ++i) {
          const double v = gkn_from_definition(shape, random_simplex_point(k, rng), lambda);
          EXPECT_LT(std::abs(v - poly), 1e-10 * poly);
        }
        EXPECT_LT(std::abs(gkn_from_definition(shape, ProbVector(boundary), lambda) - poly), 1e-10 * poly);
      }
    }
  }
}

TEST(MgfExact, JensenBound) {
  std::mt19937_64 rng(17);
  for (int k = 2; k <= 4; ++k) {
    for (int n = 1; n <= 8; ++n) {
      const GknEvaluator ev({k, n});
      for (int i = 0; i < 10; ++i) {
        const ProbVector p = random_simplex_point(k, rng);
        for (int j = 0; j <= 10; ++j) {
          const double lambda = j / 10.0;
          EXPECT_LE(mgf_exact({k, n}, p, lambda), ev.eval(lambda).value * (1 + 1e-12));
        }
      }
    }
  }
}

TEST(TailExact, Examples) {
  const ProbVector half = ProbVector::uniform(2);
  const ExperimentShape shape(2, 1);
  EXPECT_NEAR(tail_exact(shape, half, std::log(2.0) - 1e-9), 1.0, 1e-15);
  EXPECT_EQ(tail_exact(shape, half, std::log(2.0)), 0.0);
  EXPECT_NEAR(tail_exact(ExperimentShape(3, 5), ProbVector({0.1, 0.2, 0.7}), -1.0), 1.0, 1e-12);
}

TEST(TailExact, BelowEveryBound) {
  std::mt19937_64 rng(19);
  for (int k = 2; k <= 4; ++k) {
    for (int n = 1; n <= 8; ++n) {
      const GknEvaluator ev({k, n});
      const ProbVector p = random_simplex_point(k, rng);
      for (int i = 1; i <= 20; ++i) {
        const double t = meaningful_threshold(ev) + 0.5 * i;
        const double tail = tail_exact({k, n}, p, t);
        for (BoundMethod m : all_methods()) {
          if (is_reference_only(m)) continue;
          if ((m == BoundMethod::corrected || m == BoundMethod::uncorrected) && t <= k - 1) continue;
          EXPECT_LE(tail, compute_bound(m, ev, t).value * (1 + 1e-12)) << method_name(m);
        }
      }
    }
  }
}

TEST(McTail, DeterministicStatistic) {
  const McEstimate est = mc_tail(ExperimentShape(2, 1), ProbVector::uniform(2), 0.1, 100000, 0);
  EXPECT_EQ(est.estimate, 1.0);
  EXPECT_EQ(est.std_error, 0.0);
  EXPECT_THROW(mc_tail(ExperimentShape(2, 1), ProbVector::uniform(2), 0.1, 0, 0), DomainError);
}

TEST(McTail, SeedDeterminismAndThreadInvariance) {
  const ExperimentShape shape(3, 12);
  const ProbVector p({0.2, 0.3, 0.5});
  const McEstimate a = mc_tail(shape, p, 2.0, 50000, 42, 1);
  const McEstimate b = mc_tail(shape, p, 2.0, 50000, 42, 1);
  const McEstimate c = mc_tail(shape, p, 2.0, 50000, 42, 4);
  EXPECT_EQ(a.hits, b.hits);
  EXPECT_EQ(a.hits, c.hits);
  const McEstimate d = mc_tail(shape, p, 2.0, 50000, 43, 1);
  EXPECT_NE(a.hits, d.hits);
}

TEST(McTail, AgreesWithEnumeration) {
  const ExperimentShape shape(3, 12);
  const ProbVector p({0.2, 0.3, 0.5});
  for (double t : {0.5, 1.5, 3.0}) {
    const McEstimate est = mc_tail(shape, p, t, 100000, 1);
    EXPECT_LE(std::abs(est.estimate - tail_exact(shape, p, t)), 4 * est.std_error) << t;
  }
}

TEST(SampleMultinomial, HandlesZeroProbabilities) {
  std::mt19937_64 rng(1);
  const ProbVector p({0.0, 0.5, 0.0, 0.5});
  for (int i = 0; i < 100; ++i) {
    const auto draw = sample_multinomial(30, p, rng);
    EXPECT_EQ(draw[0], 0);
    EXPECT_EQ(draw[2], 0);
    EXPECT_EQ(draw[1] + draw[3], 30);
  }
}
