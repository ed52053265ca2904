#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "klchernoff/tail_bounds.hpp"

namespace klchernoff {

// JSON numbers carry 17 significant digits, CSV numbers 10. Non-finite
// values become `null` in JSON and `nan`/`inf`/`-inf` in CSV.
std::string json_number(double x);
std::string csv_number(double x);
std::string json_string(std::string_view s);

/// Flat JSON object with insertion-ordered keys.
class JsonObject {
 public:
  JsonObject& add(std::string_view key, double value);
  JsonObject& add(std::string_view key, std::int64_t value);
  JsonObject& add(std::string_view key, int value) { return add(key, std::int64_t{value}); }
  JsonObject& add(std::string_view key, bool value);
  JsonObject& add(std::string_view key, std::string_view value);
  JsonObject& add(std::string_view key, const char* value) { return add(key, std::string_view(value)); }
  JsonObject& add(std::string_view key, std::optional<double> value);
  JsonObject& add_raw(std::string_view key, std::string json);

  std::string dump() const;

 private:
  std::vector<std::pair<std::string, std::string>> fields_;
};

std::string json_array(const std::vector<std::string>& items);

JsonObject bound_json(const BoundResult& r);

}  // namespace klchernoff
