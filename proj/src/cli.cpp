#include "klchernoff/cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "klchernoff/frequency_table.hpp"
#include "klchernoff/inversion.hpp"
#include "klchernoff/oracle.hpp"
#include "klchernoff/report.hpp"
#include "klchernoff/tail_bounds.hpp"
#include "klchernoff/verify.hpp"

namespace klchernoff {
namespace {

// Curves of the bound-comparison figures.
const std::vector<BoundMethod> kSweepMethods{
    BoundMethod::exact,  BoundMethod::corrected,     BoundMethod::uncorrected,
    BoundMethod::lambda_one, BoundMethod::mardia, BoundMethod::agrawal_limit,
    BoundMethod::asymp_gamma,
};

std::uint64_t default_seed() {
  if (const char* env = std::getenv("KLCHERNOFF_SEED")) {
    std::uint64_t seed = 0;
    const std::string_view s(env);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), seed);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw DomainError("KLCHERNOFF_SEED must be an unsigned integer");
    }
    return seed;
  }
  return 0;
}

std::vector<std::string> split_list(const std::string& list) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = list.find(',', start);
    out.push_back(list.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<double> parse_doubles(const std::string& list) {
  std::vector<double> out;
  for (const auto& field : split_list(list)) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
      throw DomainError("malformed number '" + field + "'");
    }
    out.push_back(value);
  }
  return out;
}

std::vector<std::int64_t> parse_nonnegative_counts(const std::string& list) {
  std::vector<std::int64_t> out;
  for (const auto& field : split_list(list)) {
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size() || value < 0) {
      throw DomainError("malformed count '" + field + "'");
    }
    out.push_back(value);
  }
  return out;
}

std::vector<BoundMethod> parse_methods(const std::string& list) {
  std::vector<BoundMethod> requested;
  for (const auto& name : split_list(list)) requested.push_back(parse_method(name));
  // Canonical order so output rows sort by (t, method).
  std::vector<BoundMethod> out;
  for (BoundMethod m : all_methods()) {
    if (std::find(requested.begin(), requested.end(), m) != requested.end()) out.push_back(m);
  }
  return out;
}

enum class Format { json, csv };

Format parse_format(const std::string& s) {
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  throw DomainError("unknown format '" + s + "' (expected json or csv)");
}

void print_scalar(std::ostream& out, Format format, const JsonObject& json,
                  const std::vector<std::pair<std::string, std::string>>& csv) {
  if (format == Format::json) {
    out << json.dump() << '\n';
    return;
  }
  for (std::size_t i = 0; i < csv.size(); ++i) out << (i ? "," : "") << csv[i].first;
  out << '\n';
  for (std::size_t i = 0; i < csv.size(); ++i) out << (i ? "," : "") << csv[i].second;
  out << '\n';
}

struct BoundArgs {
  std::int64_t k = 0;
  std::int64_t n = 0;
  double t = 0.0;
  std::string method = "all";
  std::string format = "json";
};

int cmd_bound(const BoundArgs& a, std::ostream& out) {
  const ExperimentShape shape(a.k, a.n);
  require_bound_shape(shape);
  const TailQuery query(shape, a.t);
  const GknEvaluator ev(shape);
  const bool all = a.method == "all";
  std::vector<BoundMethod> methods = all ? all_methods() : parse_methods(a.method);

  std::vector<BoundResult> rows;
  for (BoundMethod m : methods) {
    const bool plug_in = m == BoundMethod::corrected || m == BoundMethod::uncorrected;
    // With the full set, plug-in rows outside their domain are left out;
    // an explicit request still fails.
    if (all && plug_in && !(a.t > static_cast<double>(a.k - 1))) continue;
    rows.push_back(compute_bound(m, ev, query.t));
  }

  if (parse_format(a.format) == Format::json) {
    std::vector<std::string> items;
    for (const auto& r : rows) items.push_back(bound_json(r).dump());
    JsonObject obj;
    obj.add("k", a.k).add("n", a.n).add("t", a.t).add_raw("bounds", json_array(items));
    out << obj.dump() << '\n';
  } else {
    out << "method,value,log_value,lambda_used,meaningful,reference_only\n";
    for (const auto& r : rows) {
      out << method_name(r.method) << ',' << csv_number(r.value) << ',' << csv_number(r.log_value)
          << ',' << (r.lambda_used ? csv_number(*r.lambda_used) : "") << ','
          << (r.meaningful ? "true" : "false") << ','
          << (is_reference_only(r.method) ? "true" : "false") << '\n';
    }
  }
  return kExitOk;
}

struct SweepArgs {
  std::int64_t k = 0;
  std::int64_t n = 0;
  std::optional<double> t_min;
  double t_max = 0.0;
  std::int64_t points = 200;
  std::string methods;
  std::string format = "csv";
};

int cmd_sweep(const SweepArgs& a, std::ostream& out) {
  const ExperimentShape shape(a.k, a.n);
  require_bound_shape(shape);
  const GknEvaluator ev(shape);
  const double t_min = a.t_min.value_or(meaningful_threshold(ev));
  if (a.points < 1) throw DomainError("--points must be >= 1");
  if (!(t_min > 0.0)) throw DomainError("--t-min must be positive");
  if (a.points > 1 && !(a.t_max > t_min)) throw DomainError("--t-max must exceed --t-min");
  const auto methods = a.methods.empty() ? kSweepMethods : parse_methods(a.methods);
  const Format format = parse_format(a.format);

  std::vector<std::string> json_rows;
  if (format == Format::csv) out << "t,method,value,log_value\n";
  for (std::int64_t i = 0; i < a.points; ++i) {
    const double t = a.points == 1 ? t_min
                                   : t_min + (a.t_max - t_min) * static_cast<double>(i) /
                                                 static_cast<double>(a.points - 1);
    for (BoundMethod m : methods) {
      const bool plug_in = m == BoundMethod::corrected || m == BoundMethod::uncorrected;
      // Plug-in bounds are undefined for t <= k-1; the row carries the
      // trivial bound 1 there.
      const BoundResult r = plug_in && !(t > static_cast<double>(a.k - 1))
                                ? BoundResult::from_log(m, 0.0)
                                : compute_bound(m, ev, t);
      if (format == Format::csv) {
        out << csv_number(t) << ',' << method_name(m) << ',' << csv_number(r.value) << ','
            << csv_number(r.log_value) << '\n';
      } else {
        JsonObject row;
        row.add("t", t).add("method", method_name(m)).add("value", r.value).add("log_value",
                                                                               r.log_value);
        json_rows.push_back(row.dump());
      }
    }
  }
  if (format == Format::json) out << json_array(json_rows) << '\n';
  return kExitOk;
}

struct CriticalArgs {
  std::int64_t k = 0;
  std::int64_t n = 0;
  double alpha = 0.05;
  std::string method = "exact";
  std::string format = "json";
};

int cmd_critical(const CriticalArgs& a, std::ostream& out) {
  const BoundMethod method = parse_method(a.method);
  const CriticalValue cv = critical_value({ExperimentShape(a.k, a.n), a.alpha, method});
  const double rel = std::abs(cv.achieved - a.alpha) / a.alpha;
  JsonObject obj;
  obj.add("k", a.k)
      .add("n", a.n)
      .add("alpha", a.alpha)
      .add("method", method_name(method))
      .add("t", cv.t)
      .add("achieved_bound", cv.achieved)
      .add("round_trip_rel_error", rel);
  print_scalar(out, parse_format(a.format), obj,
               {{"k", std::to_string(a.k)},
                {"n", std::to_string(a.n)},
                {"alpha", csv_number(a.alpha)},
                {"method", std::string(method_name(method))},
                {"t", csv_number(cv.t)},
                {"achieved_bound", csv_number(cv.achieved)},
                {"round_trip_rel_error", csv_number(rel)}});
  return kExitOk;
}

struct UnseenArgs {
  std::string data;
  std::string counts;
  double alpha = 0.05;
  std::string format = "json";
};

int cmd_ci_unseen(const UnseenArgs& a, std::ostream& out) {
  if (a.data.empty() == a.counts.empty()) {
    throw DomainError("exactly one of --data or --counts is required");
  }
  const FrequencyTable table =
      a.data.empty() ? FrequencyTable::parse_counts(a.counts) : FrequencyTable::load_csv(a.data);
  const CoordinateCI ci = unseen_upper_bound(table, a.alpha);
  const std::int64_t k = table.observed_categories() + 1;
  const std::int64_t n = table.sample_size();
  JsonObject obj;
  obj.add("k", k).add("n", n).add("alpha", a.alpha).add("t", ci.t_used).add("unseen_upper", ci.upper);
  print_scalar(out, parse_format(a.format), obj,
               {{"k", std::to_string(k)},
                {"n", std::to_string(n)},
                {"alpha", csv_number(a.alpha)},
                {"t", csv_number(ci.t_used)},
                {"unseen_upper", csv_number(ci.upper)}});
  return kExitOk;
}

struct CoordArgs {
  std::string counts;
  std::int64_t coord = 0;
  std::optional<double> alpha;
  std::optional<double> t;
  std::string format = "json";
};

int cmd_ci_coord(const CoordArgs& a, std::ostream& out) {
  if (a.alpha.has_value() == a.t.has_value()) {
    throw DomainError("exactly one of --alpha or --t is required");
  }
  const auto counts = parse_nonnegative_counts(a.counts);
  std::int64_t n = 0;
  for (auto c : counts) n += c;
  const ExperimentShape shape(static_cast<std::int64_t>(counts.size()), n);
  const double t = a.t ? *a.t : critical_value({shape, *a.alpha, BoundMethod::exact}).t;
  CoordinateCI ci = coord_upper_bound(ProbVector::empirical(counts), shape, a.coord, t);
  ci.alpha = a.alpha;
  JsonObject obj;
  obj.add("k", shape.k)
      .add("n", shape.n)
      .add("coord", ci.coord)
      .add("alpha", ci.alpha)
      .add("t", ci.t_used)
      .add("upper", ci.upper);
  print_scalar(out, parse_format(a.format), obj,
               {{"k", std::to_string(shape.k)},
                {"n", std::to_string(shape.n)},
                {"coord", std::to_string(ci.coord)},
                {"alpha", ci.alpha ? csv_number(*ci.alpha) : ""},
                {"t", csv_number(ci.t_used)},
                {"upper", csv_number(ci.upper)}});
  return kExitOk;
}

struct VerifyArgs {
  std::int64_t max_k = 4;
  std::int64_t max_n = 8;
  std::optional<std::uint64_t> seed;
  bool inject_fault = false;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  VerifyOptions options;
  options.max_k = a.max_k;
  options.max_n = a.max_n;
  options.seed = a.seed.value_or(default_seed());
  options.inject_fault = a.inject_fault;
  const VerifyReport report = run_verification(options);
  for (const auto& p : report.properties) {
    out << (p.ok() ? "PASS " : "FAIL ") << p.name << ' ' << p.passed << '/' << p.total << '\n';
  }
  out << (report.ok() ? "all properties passed" : "verification FAILED") << '\n';
  return report.ok() ? kExitOk : kExitVerify;
}

struct McArgs {
  std::int64_t k = 0;
  std::int64_t n = 0;
  double t = 0.0;
  std::string p;
  std::int64_t samples = 100000;
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
  std::string format = "json";
};

int cmd_mc_tail(const McArgs& a, std::ostream& out) {
  const ExperimentShape shape(a.k, a.n);
  const ProbVector p = a.p.empty() ? ProbVector::uniform(static_cast<std::size_t>(a.k))
                                   : ProbVector(parse_doubles(a.p));
  const std::uint64_t seed = a.seed.value_or(default_seed());
  const McEstimate est = mc_tail(shape, p, a.t, a.samples, seed, a.threads);
  JsonObject obj;
  obj.add("k", a.k)
      .add("n", a.n)
      .add("t", a.t)
      .add("samples", est.samples)
      .add("seed", static_cast<std::int64_t>(seed))
      .add("estimate", est.estimate)
      .add("std_error", est.std_error);
  print_scalar(out, parse_format(a.format), obj,
               {{"k", std::to_string(a.k)},
                {"n", std::to_string(a.n)},
                {"t", csv_number(a.t)},
                {"samples", std::to_string(est.samples)},
                {"seed", std::to_string(seed)},
                {"estimate", csv_number(est.estimate)},
                {"std_error", csv_number(est.std_error)}});
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{
      "Chernoff-type tail bounds on n*D(phat||p) for multinomial data.\n"
      "All logarithms and divergences are natural logs (nats)."};
  app.require_subcommand(1);

  BoundArgs bound;
  auto* bound_cmd = app.add_subcommand("bound", "Upper bounds on P(n*D(phat||p) > t)");
  bound_cmd->add_option("--k", bound.k, "Alphabet size")->required();
  bound_cmd->add_option("--n", bound.n, "Sample size")->required();
  bound_cmd->add_option("--t", bound.t, "Deviation threshold in nats")->required();
  bound_cmd->add_option("--method", bound.method, "Method name, comma list, or 'all'");
  bound_cmd->add_option("--format", bound.format, "json or csv");

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Bounds over a uniform t-grid (CSV for plotting)");
  sweep_cmd->add_option("--k", sweep.k)->required();
  sweep_cmd->add_option("--n", sweep.n)->required();
  sweep_cmd->add_option("--t-min", sweep.t_min, "Defaults to the meaningful threshold");
  sweep_cmd->add_option("--t-max", sweep.t_max)->required();
  sweep_cmd->add_option("--points", sweep.points);
  sweep_cmd->add_option("--methods", sweep.methods, "Comma list of methods");
  sweep_cmd->add_option("--format", sweep.format, "csv or json");

  CriticalArgs critical;
  auto* critical_cmd = app.add_subcommand("critical", "Critical value t where the bound equals alpha");
  critical_cmd->add_option("--k", critical.k)->required();
  critical_cmd->add_option("--n", critical.n)->required();
  critical_cmd->add_option("--alpha", critical.alpha)->required();
  critical_cmd->add_option("--method", critical.method);
  critical_cmd->add_option("--format", critical.format);

  UnseenArgs unseen;
  auto* unseen_cmd =
      app.add_subcommand("ci-unseen", "Upper confidence bound on the mass of unseen categories");
  unseen_cmd->add_option("--data", unseen.data, "CSV file with header frequency,species");
  unseen_cmd->add_option("--counts", unseen.counts, "Comma list of positive counts");
  unseen_cmd->add_option("--alpha", unseen.alpha);
  unseen_cmd->add_option("--format", unseen.format);

  CoordArgs coord;
  auto* coord_cmd = app.add_subcommand("ci-coord", "Upper confidence bound on one coordinate");
  coord_cmd->add_option("--counts", coord.counts, "Comma list of nonnegative counts")->required();
  coord_cmd->add_option("--coord", coord.coord, "1-based coordinate")->required();
  coord_cmd->add_option("--alpha", coord.alpha);
  coord_cmd->add_option("--t", coord.t);
  coord_cmd->add_option("--format", coord.format);

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Run the enumeration-oracle property suite");
  verify_cmd->add_option("--max-k", verify.max_k);
  verify_cmd->add_option("--max-n", verify.max_n);
  verify_cmd->add_option("--seed", verify.seed, "Defaults to $KLCHERNOFF_SEED or 0");
  verify_cmd->add_flag("--inject-fault", verify.inject_fault)->group("");

  McArgs mc;
  auto* mc_cmd = app.add_subcommand("mc-tail", "Monte Carlo estimate of P(n*D(phat||p) > t)");
  mc_cmd->add_option("--k", mc.k)->required();
  mc_cmd->add_option("--n", mc.n)->required();
  mc_cmd->add_option("--t", mc.t)->required();
  mc_cmd->add_option("--p", mc.p, "Comma list of probabilities (default uniform)");
  mc_cmd->add_option("--samples", mc.samples);
  mc_cmd->add_option("--seed", mc.seed, "Defaults to $KLCHERNOFF_SEED or 0");
  mc_cmd->add_option("--threads", mc.threads);
  mc_cmd->add_option("--format", mc.format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*bound_cmd) return cmd_bound(bound, out);
    if (*sweep_cmd) return cmd_sweep(sweep, out);
    if (*critical_cmd) return cmd_critical(critical, out);
    if (*unseen_cmd) return cmd_ci_unseen(unseen, out);
    if (*coord_cmd) return cmd_ci_coord(coord, out);
    if (*verify_cmd) return cmd_verify(verify, out);
    if (*mc_cmd) return cmd_mc_tail(mc, out);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace klchernoff
