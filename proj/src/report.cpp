#include "klchernoff/report.hpp"

#include <cmath>
#include <cstdio>

namespace klchernoff {
namespace {

std::string format_number(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

}  // namespace

std::string json_number(double x) {
  if (!std::isfinite(x)) return "null";
  return format_number(x, 17);
}

std::string csv_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return format_number(x, 10);
}

std::string json_string(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      default:
        out += c;
    }
  }
  out += '"';
  return out;
}

JsonObject& JsonObject::add(std::string_view key, double value) {
  return add_raw(key, json_number(value));
}

JsonObject& JsonObject::add(std::string_view key, std::int64_t value) {
  return add_raw(key, std::to_string(value));
}

JsonObject& JsonObject::add(std::string_view key, bool value) {
  return add_raw(key, value ? "true" : "false");
}

JsonObject& JsonObject::add(std::string_view key, std::string_view value) {
  return add_raw(key, json_string(value));
}

JsonObject& JsonObject::add(std::string_view key, std::optional<double> value) {
  return add_raw(key, value ? json_number(*value) : "null");
}

JsonObject& JsonObject::add_raw(std::string_view key, std::string json) {
  fields_.emplace_back(std::string(key), std::move(json));
  return *this;
}

std::string JsonObject::dump() const {
  std::string out = "{";
  for (std::size_t i = 0; i < fields_.size(); ++i) {
    if (i > 0) out += ',';
    out += json_string(fields_[i].first);
    out += ':';
    out += fields_[i].second;
  }
  out += '}';
  return out;
}

std::string json_array(const std::vector<std::string>& items) {
  std::string out = "[";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += ',';
    out += items[i];
  }
  out += ']';
  return out;
}

JsonObject bound_json(const BoundResult& r) {
  JsonObject obj;
  obj.add("method", method_name(r.method))
      .add("value", r.value)
      .add("log_value", r.log_value)
      .add("lambda_used", r.lambda_used)
      .add("meaningful", r.meaningful)
      .add("reference_only", is_reference_only(r.method));
  return obj;
}

}  // namespace klchernoff
