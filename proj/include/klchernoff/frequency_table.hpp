#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "klchernoff/types.hpp"

namespace klchernoff {

/// Observed count data, as frequency-of-frequencies ("f categories were
/// seen s times each") or as raw per-category counts.
class FrequencyTable {
 public:
  struct Entry {
    std::int64_t frequency;
    std::int64_t species;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  static FrequencyTable from_entries(std::vector<Entry> entries);
  static FrequencyTable from_counts(std::vector<std::int64_t> counts);

  /// CSV with header `frequency,species` and positive integer rows.
  static FrequencyTable parse_csv(std::istream& in);
  static FrequencyTable load_csv(const std::string& path);
  /// "c1,c2,..." of positive integers.
  static FrequencyTable parse_counts(std::string_view list);

  std::int64_t sample_size() const;
  std::int64_t observed_categories() const;

  /// Per-category counts; frequency-of-frequency entries are expanded in
  /// row order.
  std::vector<std::int64_t> counts() const;
  ProbVector empirical() const;

  /// Frequency-of-frequencies form with ascending frequency, merging
  /// duplicate frequencies.
  std::vector<Entry> frequency_of_frequencies() const;
  std::string to_csv() const;

 private:
  std::vector<Entry> entries_;
  std::vector<std::int64_t> raw_counts_;
  bool raw_ = false;
};

}  // namespace klchernoff
