#include "klchernoff/verify.hpp"

#include <cmath>
#include <random>

#include "klchernoff/gkn.hpp"
#include "klchernoff/oracle.hpp"
#include "klchernoff/tail_bounds.hpp"

namespace klchernoff {
namespace {

constexpr double kRelTolerance = 1e-10;
constexpr double kBoundSlack = 1e-12;

bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

bool leq(double a, double b) { return a <= b * (1.0 + kBoundSlack) + 1e-300; }

class Suite {
 public:
  explicit Suite(const VerifyOptions& options) : options_(options), rng_(options.seed) {}

  GknEvaluator evaluator(std::int64_t k, std::int64_t n) const {
    GknEvaluator ev({k, n});
    if (options_.inject_fault && ev.log_coeffs().size() > 1) {
      return ev.perturbed(1, -std::log(2.0));
    }
    return ev;
  }

  std::vector<ProbVector> test_points(std::size_t k) {
    std::vector<ProbVector> points;
    for (int i = 0; i < options_.random_p_per_shape; ++i) {
      points.push_back(random_simplex_point(k, rng_));
    }
    // Boundary point: last coordinate has no mass.
    std::vector<double> boundary(k, 0.0);
    for (std::size_t i = 0; i + 1 < k; ++i) boundary[i] = 1.0 / static_cast<double>(k - 1);
    points.emplace_back(std::move(boundary));
    return points;
  }

  VerifyReport run() {
    PropertyTally independence{"p_independence"};
    PropertyTally jensen{"jensen_mgf_bound"};
    PropertyTally recurrence{"recurrence"};
    PropertyTally dominance{"bound_dominance"};
    PropertyTally validity{"tail_validity"};

    const std::vector<double> lambdas{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};

    for (std::int64_t k = 2; k <= options_.max_k; ++k) {
      for (std::int64_t n = 1; n <= options_.max_n; ++n) {
        const ExperimentShape shape(k, n);
        const GknEvaluator ev = evaluator(k, n);
        const auto points = test_points(static_cast<std::size_t>(k));

        for (const auto& p : points) {
          for (double lambda : lambdas) {
            const double poly = ev.eval(lambda).value;
            tally(independence, close_rel(gkn_from_definition(shape, p, lambda), poly, kRelTolerance));
            tally(jensen, leq(mgf_exact(shape, p, lambda), poly));
          }
        }

        const GknEvaluator fewer_categories = evaluator(k - 1, n);
        const GknEvaluator fewer_samples = evaluator(k, n - 1);
        for (double lambda : lambdas) {
          const double whole = ev.eval(lambda).value;
          const double shrunk = lambda * static_cast<double>(n - 1) / static_cast<double>(n);
          const double residual = whole - (fewer_categories.eval(lambda).value +
                                           lambda * fewer_samples.eval(shrunk).value);
          tally(recurrence, std::abs(residual) <= kRelTolerance * whole);
        }

        const double threshold = meaningful_threshold(ev);
        for (int i = 1; i <= 20; ++i) {
          const double t = threshold + 0.75 * i;
          const BoundResult exact = chernoff_exact(ev, t);
          const BoundResult one = lambda_one_bound(ev, t);
          const BoundResult types = types_bound({shape, t});
          bool ok = leq(exact.value, one.value) && leq(one.value, types.value);
          if (t > static_cast<double>(k - 1)) {
            const BoundResult corrected = chernoff_corrected(ev, t);
            const BoundResult uncorrected = chernoff_uncorrected(ev, t);
            const BoundResult agrawal = agrawal_limit_bound({shape, t});
            ok = ok && leq(exact.value, corrected.value) && leq(exact.value, uncorrected.value) &&
                 leq(uncorrected.value, agrawal.value);
          }
          tally(dominance, ok);
          for (const auto& p : points) {
            tally(validity, leq(tail_exact(shape, p, t), exact.value));
          }
        }
      }
    }
    return {{independence, jensen, recurrence, dominance, validity}};
  }

 private:
  static void tally(PropertyTally& p, bool ok) {
    ++p.total;
    if (ok) ++p.passed;
  }

  VerifyOptions options_;
  std::mt19937_64 rng_;
};

}  // namespace

bool VerifyReport::ok() const {
  for (const auto& p : properties) {
    if (!p.ok()) return false;
  }
  return true;
}

VerifyReport run_verification(const VerifyOptions& options) {
  if (options.max_k < 2 || options.max_n < 1) {
    throw DomainError("verification needs max_k >= 2 and max_n >= 1");
  }
  return Suite(options).run();
}

}  // namespace klchernoff
