#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace klchernoff {

struct VerifyOptions {
  std::int64_t max_k = 4;
  std::int64_t max_n = 8;
  std::uint64_t seed = 0;
  int random_p_per_shape = 5;
  // Negative control: halves the linear coefficient of every polynomial.
  bool inject_fault = false;
};

struct PropertyTally {
  std::string name;
  std::int64_t passed = 0;
  std::int64_t total = 0;
  bool ok() const { return passed == total; }
};

struct VerifyReport {
  std::vector<PropertyTally> properties;
  bool ok() const;
};

/// Checks the enumeration oracle against the polynomial and bounds on every
/// shape with 2 <= k <= max_k, 1 <= n <= max_n: p-independence of the
/// definition, the Jensen (MGF) bound, the recurrence, the dominance chain
/// among bound methods, and tail_exact <= exact bound.
VerifyReport run_verification(const VerifyOptions& options);

}  // namespace klchernoff
