#include "klchernoff/frequency_table.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace klchernoff {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::int64_t parse_positive(std::string_view field, std::string_view what) {
  field = trim(field);
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw DomainError("malformed " + std::string(what) + " '" + std::string(field) + "'");
  }
  if (value <= 0) {
    throw DomainError(std::string(what) + " must be a positive integer, got " +
                      std::to_string(value));
  }
  return value;
}

}  // namespace

FrequencyTable FrequencyTable::from_entries(std::vector<Entry> entries) {
  if (entries.empty()) throw DomainError("frequency table is empty");
  for (const auto& e : entries) {
    if (e.frequency <= 0 || e.species <= 0) {
      throw DomainError("frequency and species counts must be positive");
    }
  }
  FrequencyTable table;
  table.entries_ = std::move(entries);
  return table;
}

FrequencyTable FrequencyTable::from_counts(std::vector<std::int64_t> counts) {
  if (counts.empty()) throw DomainError("count list is empty");
  for (auto c : counts) {
    if (c <= 0) throw DomainError("observed counts must be positive");
  }
  FrequencyTable table;
  table.raw_counts_ = std::move(counts);
  table.raw_ = true;
  return table;
}

FrequencyTable FrequencyTable::parse_csv(std::istream& in) {
  std::string line;
  bool header_seen = false;
  std::vector<Entry> entries;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto content = trim(line);
    if (content.empty()) continue;
    if (!header_seen) {
      if (content != "frequency,species") {
        throw DomainError("expected header 'frequency,species', got '" + std::string(content) +
                          "'");
      }
      header_seen = true;
      continue;
    }
    const auto comma = content.find(',');
    if (comma == std::string_view::npos || content.find(',', comma + 1) != std::string_view::npos) {
      throw DomainError("line " + std::to_string(line_no) + ": expected two fields");
    }
    entries.push_back({parse_positive(content.substr(0, comma), "frequency"),
                       parse_positive(content.substr(comma + 1), "species count")});
  }
  if (!header_seen) throw DomainError("missing 'frequency,species' header");
  return from_entries(std::move(entries));
}

FrequencyTable FrequencyTable::load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open data file '" + path + "'");
  return parse_csv(in);
}

FrequencyTable FrequencyTable::parse_counts(std::string_view list) {
  std::vector<std::int64_t> counts;
  std::size_t start = 0;
  while (start <= list.size()) {
    const auto comma = list.find(',', start);
    const auto end = comma == std::string_view::npos ? list.size() : comma;
    counts.push_back(parse_positive(list.substr(start, end - start), "count"));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return from_counts(std::move(counts));
}

std::int64_t FrequencyTable::sample_size() const {
  std::int64_t n = 0;
  if (raw_) {
    for (auto c : raw_counts_) n += c;
  } else {
    for (const auto& e : entries_) n += e.frequency * e.species;
  }
  return n;
}

std::int64_t FrequencyTable::observed_categories() const {
  if (raw_) return static_cast<std::int64_t>(raw_counts_.size());
  std::int64_t k = 0;
  for (const auto& e : entries_) k += e.species;
  return k;
}

std::vector<std::int64_t> FrequencyTable::counts() const {
  if (raw_) return raw_counts_;
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(observed_categories()));
  for (const auto& e : entries_) out.insert(out.end(), static_cast<std::size_t>(e.species), e.frequency);
  return out;
}

ProbVector FrequencyTable::empirical() const { return ProbVector::empirical(counts()); }

std::vector<FrequencyTable::Entry> FrequencyTable::frequency_of_frequencies() const {
  std::map<std::int64_t, std::int64_t> merged;
  if (raw_) {
    for (auto c : raw_counts_) ++merged[c];
  } else {
    for (const auto& e : entries_) merged[e.frequency] += e.species;
  }
  std::vector<Entry> out;
  for (const auto& [frequency, species] : merged) out.push_back({frequency, species});
  return out;
}

std::string FrequencyTable::to_csv() const {
  std::ostringstream out;
  out << "frequency,species\n";
  for (const auto& e : frequency_of_frequencies()) out << e.frequency << ',' << e.species << '\n';
  return out.str();
}

}  // namespace klchernoff
