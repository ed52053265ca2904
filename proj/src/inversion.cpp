#include "klchernoff/inversion.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace klchernoff {
namespace {

constexpr int kMaxDoublings = 200;
constexpr int kMaxBisections = 2000;
constexpr double kAlphaRelTolerance = 1e-9;
constexpr double kRootTolerance = 1e-12;

}  // namespace

CriticalValue critical_value(const GknEvaluator& ev, double alpha, BoundMethod method) {
  require_bound_shape(ev.shape());
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("alpha must lie in (0,1), got " + std::to_string(alpha));
  }
  auto bound = [&](double t) { return compute_bound(method, ev, t).value; };

  // Above the unity threshold every method is continuous and decreasing in t.
  double lo = std::max(unity_threshold(method, ev), 0.0);
  double hi = std::max(4.0 * static_cast<double>(ev.shape().k - 1), 10.0);
  double hi_value = bound(hi);
  int doublings = 0;
  while (hi_value >= alpha) {
    if (++doublings > kMaxDoublings) {
      throw DomainError("critical value bracketing exceeded 200 doublings");
    }
    lo = std::max(lo, hi);
    hi *= 2.0;
    hi_value = bound(hi);
  }

  CriticalValue best{hi, hi_value};
  for (int i = 0; i < kMaxBisections; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double value = bound(mid);
    if (std::abs(value - alpha) < std::abs(best.achieved - alpha)) best = {mid, value};
    if (std::abs(value - alpha) <= kAlphaRelTolerance * alpha) break;
    if (value >= alpha) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return best;
}

CriticalValue critical_value(const CriticalValueQuery& q) {
  return critical_value(GknEvaluator(q.shape), q.alpha, q.method);
}

double binary_kl(double phat, double v) {
  if (!(phat >= 0.0 && phat <= 1.0) || !(v >= 0.0 && v <= 1.0)) {
    throw DomainError("binary_kl arguments must lie in [0,1]");
  }
  double sum = 0.0;
  if (phat > 0.0) {
    if (v == 0.0) return std::numeric_limits<double>::infinity();
    sum += phat * std::log(phat / v);
  }
  if (phat < 1.0) {
    if (v == 1.0) return std::numeric_limits<double>::infinity();
    sum += (1.0 - phat) * (std::log1p(-phat) - std::log1p(-v));
  }
  return sum;
}

CoordinateCI coord_upper_bound(const ProbVector& phat, const ExperimentShape& shape,
                               std::int64_t coord, double t) {
  if (!(t > 0.0)) throw DomainError("t must be positive, got " + std::to_string(t));
  if (phat.size() != static_cast<std::size_t>(shape.k)) {
    throw DomainError("empirical vector length does not match k");
  }
  if (coord < 1 || coord > shape.k) {
    throw DomainError("coordinate " + std::to_string(coord) + " outside [1, k]");
  }
  if (shape.n < 1) throw DomainError("coordinate bound needs n >= 1");

  // Fix p_coord = v. The remaining mass 1-v is best spread in proportion to
  // p̂ off the coordinate: by the log-sum inequality any other split gives
  // a larger KL contribution from those coordinates. The constraint then
  // collapses to n·d(p̂_coord, v) <= t with d the binary relative entropy,
  // which increases in v on [p̂_coord, 1).
  const double q = phat[static_cast<std::size_t>(coord - 1)];
  const double budget = t / static_cast<double>(shape.n);
  if (q >= 1.0) return {coord, 1.0, t, std::nullopt};

  double lo = q;
  double hi = 1.0;
  while (hi - lo > kRootTolerance) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (binary_kl(q, mid) <= budget) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {coord, lo, t, std::nullopt};
}

CoordinateCI unseen_upper_bound(const FrequencyTable& table, double alpha) {
  auto counts = table.counts();
  if (counts.empty()) throw DomainError("frequency table is empty");
  counts.push_back(0);
  const ExperimentShape shape(static_cast<std::int64_t>(counts.size()), table.sample_size());
  const CriticalValue cv = critical_value(GknEvaluator(shape), alpha, BoundMethod::exact);
  CoordinateCI ci = coord_upper_bound(ProbVector::empirical(counts), shape, shape.k, cv.t);
  ci.alpha = alpha;
  return ci;
}

}  // namespace klchernoff
