#pragma once

#include <optional>

#include "klchernoff/frequency_table.hpp"
#include "klchernoff/tail_bounds.hpp"

namespace klchernoff {

struct CriticalValueQuery {
  ExperimentShape shape;
  double alpha;
  BoundMethod method = BoundMethod::exact;
};

struct CriticalValue {
  double t;
  double achieved;  // bound value at t
};

/// t such that the chosen bound at t equals alpha (to 1e-9 relative).
/// Brackets from the method's unity threshold, doubling the upper end from
/// max(4(k-1), 10), then bisects.
CriticalValue critical_value(const CriticalValueQuery& q);
CriticalValue critical_value(const GknEvaluator& ev, double alpha,
                             BoundMethod method = BoundMethod::exact);

struct CoordinateCI {
  std::int64_t coord;  // 1-based
  double upper;
  double t_used;
  std::optional<double> alpha;
};

/// p̂ log(p̂/v) + (1-p̂) log((1-p̂)/(1-v)).
double binary_kl(double phat, double v);

/// Largest p_coord over the ball {p : n·D(p̂‖p) <= t}.
CoordinateCI coord_upper_bound(const ProbVector& phat, const ExperimentShape& shape,
                               std::int64_t coord, double t);

/// Upper confidence bound on the total mass of categories never observed:
/// one unseen category is appended to the table (k = observed + 1) and
/// bounded at the exact-bound critical value for alpha.
CoordinateCI unseen_upper_bound(const FrequencyTable& table, double alpha);

}  // namespace klchernoff
