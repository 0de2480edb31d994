// cachecast: exact construction, simulation and verification of
// error-correcting coded-caching delivery over a shared broadcast link.
//
// Subcommands:
//   simulate  build a scheme, inject channel errors, check every user decodes
//   rates     exact average/peak delivery rates for integer replication
//   curve     rate-memory curve (lower convex envelope) as CSV/JSON
//   verify    brute-force optimality chain alpha = min-rank = delivery length
//   nq        shortest binary linear code of dimension k and distance d
//
// Exit codes: 0 success, 1 verification/simulation failure, 2 usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cachecast/ecc.hpp"
#include "cachecast/indexcoding.hpp"

using nlohmann::json;
using namespace cachecast;

namespace {

constexpr int kFormatVersion = 1;

struct RunSpec {
  int num_files = 0;
  int num_users = 0;
  std::string cache_size = "0";
  int subfile_bits = 8;
  int delta = 0;
  std::string demand_text;
  std::string error_mode = "adversarial";
  int trials = 100;
  std::uint64_t seed = 12345;
  int max_errors = -1;  // -1: use delta
  std::string format = "pretty";
  std::string out_path;
  std::string config_path;
};

caching::DemandVector parse_demand(const std::string& text) {
  caching::DemandVector demand;
  std::stringstream stream(text);
  std::string part;
  while (std::getline(stream, part, ',')) {
    if (part.empty()) throw std::domain_error("demand: empty entry");
    demand.push_back(std::stoi(part));
  }
  if (demand.empty()) throw std::domain_error("demand: no entries");
  return demand;
}

// Values from --config replace flag values, per the documented precedence.
void apply_config_file(RunSpec& spec) {
  if (spec.config_path.empty()) return;
  std::ifstream in(spec.config_path);
  if (!in) throw std::domain_error("config: cannot open " + spec.config_path);
  json j = json::parse(in);
  if (j.contains("N")) spec.num_files = j["N"].get<int>();
  if (j.contains("K")) spec.num_users = j["K"].get<int>();
  if (j.contains("M")) {
    if (j["M"].is_string())
      spec.cache_size = j["M"].get<std::string>();
    else if (j["M"].is_number_integer())
      spec.cache_size = std::to_string(j["M"].get<long long>());
    else {
      char buffer[64];
      std::snprintf(buffer, sizeof buffer, "%.17g", j["M"].get<double>());
      spec.cache_size = buffer;
    }
  }
  if (j.contains("subfile_bits")) spec.subfile_bits = j["subfile_bits"].get<int>();
  if (j.contains("seed")) spec.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("delta")) spec.delta = j["delta"].get<int>();
  if (j.contains("demand")) {
    spec.demand_text.clear();
    for (const auto& entry : j["demand"]) {
      if (!spec.demand_text.empty()) spec.demand_text += ",";
      spec.demand_text += std::to_string(entry.get<int>());
    }
  }
}

caching::CachingConfig make_config(const RunSpec& spec) {
  return caching::make_config(spec.num_files, spec.num_users, Rational::parse(spec.cache_size),
                              spec.subfile_bits);
}

json config_json(const caching::CachingConfig& cfg) {
  return json{{"N", cfg.num_files},
              {"K", cfg.num_users},
              {"M", cfg.cache_size.to_string()},
              {"subfile_bits", cfg.subfile_bits},
              {"replication", cfg.replication.to_string()}};
}

json rational_json(const Rational& value) {
  return json{{"num", value.num()}, {"den", value.den()}, {"value", value.to_double()}};
}

void emit(const RunSpec& spec, const std::string& text) {
  if (spec.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(spec.out_path);
  if (!out) throw std::domain_error("out: cannot open " + spec.out_path);
  out << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

int cmd_simulate(RunSpec spec) {
  apply_config_file(spec);
  if (spec.demand_text.empty()) throw std::domain_error("simulate: --demand is required");
  if (spec.format == "csv") throw std::domain_error("simulate: csv output not supported");
  caching::CachingConfig cfg = make_config(spec);
  caching::DemandVector demand = parse_demand(spec.demand_text);
  auto files = caching::generate_files(cfg, spec.seed);
  auto pf = caching::Prefetching::symmetric_batch(cfg, files);
  auto scheme = ecc::build_scheme(cfg, pf, demand, spec.delta);

  int max_errors = spec.max_errors >= 0 ? spec.max_errors : spec.delta;
  ecc::SweepReport sweep;
  if (spec.error_mode == "adversarial")
    sweep = ecc::adversarial_sweep(scheme, pf, files, max_errors);
  else if (spec.error_mode == "random")
    sweep = ecc::random_sweep(scheme, pf, files, spec.trials, spec.seed, max_errors);
  else
    throw std::domain_error("simulate: --errors must be adversarial or random");

  json report;
  report["format_version"] = kFormatVersion;
  report["command"] = "simulate";
  report["config"] = config_json(cfg);
  report["demand"] = demand;
  report["delta"] = spec.delta;
  report["max_errors"] = max_errors;
  report["seed"] = spec.seed;
  report["error_mode"] = spec.error_mode;
  if (spec.error_mode == "random") report["trials"] = spec.trials;
  report["scheme"] = json::parse(ecc::scheme_to_json_string(scheme, spec.seed));
  report["transmissions"] = json::parse(delivery::to_json_string(scheme.inner, cfg.subfile_bits));
  json patterns = json::array();
  for (const auto& result : sweep.results) {
    json blocks = json::array();
    json payloads = json::array();
    for (const auto& [index, flip] : result.pattern.flips) {
      blocks.push_back(index + 1);
      payloads.push_back(flip.to_hex());
    }
    patterns.push_back(json{{"blocks", blocks}, {"payloads", payloads}, {"pass", result.ok}});
  }
  report["patterns"] = patterns;
  report["totals"] = json{{"patterns", sweep.results.size()},
                          {"passed", sweep.results.size() - sweep.failures},
                          {"failed", sweep.failures}};
  report["all_passed"] = sweep.all_ok();

  if (spec.format == "json") {
    emit(spec, dump(report));
  } else {
    std::ostringstream text;
    text << "scheme: " << scheme.inner_length() << " inner symbols -> " << scheme.block_count()
         << " blocks via [" << scheme.outer.length() << "," << scheme.outer.dimension() << ","
         << scheme.outer.min_distance() << "] outer code, delta=" << spec.delta << "\n";
    text << "sweep: " << sweep.results.size() << " patterns, " << sweep.failures << " failed";
    if (!sweep.all_ok()) {
      for (const auto& result : sweep.results) {
        if (result.ok) continue;
        text << "\n  FAIL blocks:";
        for (const auto& [index, flip] : result.pattern.flips) text << " " << (index + 1);
        break;
      }
    }
    text << "\n";
    emit(spec, text.str());
  }
  return sweep.all_ok() ? 0 : 1;
}

int cmd_rates(RunSpec spec) {
  apply_config_file(spec);
  if (spec.format == "csv") throw std::domain_error("rates: csv output not supported; see curve");
  caching::CachingConfig cfg = make_config(spec);
  if (!cfg.integral_replication)
    throw std::domain_error("rates: replication K*M/N is not an integer; use `curve`");

  auto census = caching::demand_census(cfg.num_files, cfg.num_users);
  json per_distinct = json::array();
  for (const auto& [distinct, count] : census) {
    auto row = ecc::rate_report_for_distinct(cfg, distinct, spec.delta);
    per_distinct.push_back(json{{"distinct", distinct},
                                {"demand_vectors", count},
                                {"kappa", row.kappa},
                                {"blocks", row.transmissions},
                                {"rate", rational_json(row.rate)}});
  }
  Rational average = ecc::average_rate(cfg, spec.delta);
  auto peak = ecc::peak_rate_report(cfg, spec.delta);

  json report;
  report["format_version"] = kFormatVersion;
  report["command"] = "rates";
  report["config"] = config_json(cfg);
  report["delta"] = spec.delta;
  report["per_distinct"] = per_distinct;
  report["average_rate"] = rational_json(average);
  report["peak_rate"] = rational_json(peak.rate);

  if (spec.format == "json") {
    emit(spec, dump(report));
  } else {
    std::ostringstream text;
    text << "N=" << cfg.num_files << " K=" << cfg.num_users << " M=" << cfg.cache_size.to_string()
         << " r=" << cfg.replication.to_string() << " delta=" << spec.delta << "\n";
    text << "distinct  demands  kappa  blocks  rate\n";
    char line[128];
    for (const auto& row : per_distinct) {
      Rational rate(row["rate"]["num"].get<long long>(), row["rate"]["den"].get<long long>());
      std::snprintf(line, sizeof line, "%8d %8lld %6lld %7lld  %s\n", row["distinct"].get<int>(),
                    row["demand_vectors"].get<long long>(), row["kappa"].get<long long>(),
                    row["blocks"].get<long long>(), rate.to_string().c_str());
      text << line;
    }
    text << "average rate: " << average.to_string() << " (" << average.to_double() << ")\n";
    text << "peak rate:    " << peak.rate.to_string() << " (" << peak.rate.to_double() << ")\n";
    emit(spec, text.str());
  }
  return 0;
}

int cmd_curve(RunSpec spec, int points, const std::string& rate_kind) {
  apply_config_file(spec);
  if (!spec.demand_text.empty()) throw std::domain_error("curve: --demand is not accepted");
  if (points < 2) throw std::domain_error("curve: --points must be at least 2");
  if (spec.num_files < 1 || spec.num_users < 1)
    throw std::domain_error("curve: --N and --K are required");
  ecc::RateKind kind =
      rate_kind == "average" ? ecc::RateKind::average : ecc::RateKind::peak;
  if (rate_kind != "average" && rate_kind != "peak")
    throw std::domain_error("curve: --rate must be average or peak");

  auto vertices = ecc::rate_vertices(spec.num_files, spec.num_users, spec.delta, kind);
  struct Row {
    Rational memory;
    std::optional<int> replication;
    Rational rate;
  };
  std::vector<Row> rows;
  for (int r = 0; r <= spec.num_users; ++r)
    rows.push_back({vertices[r].first, r,
                    ecc::rate_envelope(spec.num_files, spec.num_users, spec.delta,
                                       vertices[r].first, kind)});
  for (int j = 0; j < points; ++j) {
    Rational memory = Rational(static_cast<long long>(spec.num_files) * j, points - 1);
    rows.push_back({memory, std::nullopt,
                    ecc::rate_envelope(spec.num_files, spec.num_users, spec.delta, memory, kind)});
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.memory != b.memory) return a.memory < b.memory;
    return a.replication.has_value() && !b.replication.has_value();
  });
  rows.erase(std::unique(rows.begin(), rows.end(),
                         [](const Row& a, const Row& b) { return a.memory == b.memory; }),
             rows.end());

  if (spec.format == "csv") {
    std::ostringstream text;
    text << "M,r,rate_num,rate_den,rate_float\n";
    char buffer[64];
    for (const Row& row : rows) {
      Rational replication = row.memory * Rational(spec.num_users) / Rational(spec.num_files);
      std::snprintf(buffer, sizeof buffer, "%.10g,%.10g,%lld,%lld,%.10g",
                    row.memory.to_double(), replication.to_double(), row.rate.num(),
                    row.rate.den(), row.rate.to_double());
      text << buffer << "\n";
    }
    emit(spec, text.str());
    return 0;
  }

  json report;
  report["format_version"] = kFormatVersion;
  report["command"] = "curve";
  report["N"] = spec.num_files;
  report["K"] = spec.num_users;
  report["delta"] = spec.delta;
  report["rate_kind"] = rate_kind;
  json vertex_list = json::array();
  for (int r = 0; r <= spec.num_users; ++r)
    vertex_list.push_back(json{{"M", vertices[r].first.to_string()},
                               {"r", r},
                               {"rate", rational_json(vertices[r].second)}});
  report["vertices"] = vertex_list;
  json samples = json::array();
  for (const Row& row : rows)
    samples.push_back(json{{"M", row.memory.to_string()}, {"rate", rational_json(row.rate)}});
  report["samples"] = samples;

  if (spec.format == "json") {
    emit(spec, dump(report));
  } else {
    std::ostringstream text;
    text << rate_kind << "-rate envelope, N=" << spec.num_files << " K=" << spec.num_users
         << " delta=" << spec.delta << "\n";
    for (const Row& row : rows)
      text << "  M=" << row.memory.to_string() << (row.replication ? " (vertex)" : "")
           << " rate=" << row.rate.to_string() << "\n";
    emit(spec, text.str());
  }
  return 0;
}

int cmd_verify(RunSpec spec, unsigned alpha_cap, unsigned minrank_cap) {
  apply_config_file(spec);
  if (spec.format == "csv") throw std::domain_error("verify: csv output not supported");
  caching::CachingConfig cfg = make_config(spec);
  auto files = caching::generate_files(cfg, spec.seed);
  auto pf = caching::Prefetching::symmetric_batch(cfg, files);

  json rows = json::array();
  bool all_ok = true;
  std::size_t minrank_skipped = 0;
  caching::DemandVector demand(cfg.num_users, 1);
  while (true) {
    auto delivery_result = delivery::yma_transmissions(cfg, pf, demand);
    auto instance = indexcoding::induce(cfg, pf, demand);
    std::uint64_t closed =
        ecc::min_rank_closed_form(cfg.num_users, cfg.r, caching::distinct_demands(demand));
    std::uint64_t yma_length = delivery_result.transmissions.symbols.size();
    bool valid = indexcoding::is_valid_index_code(instance, delivery_result.code.matrix);

    json row;
    row["demand"] = demand;
    row["distinct"] = caching::distinct_demands(demand);
    row["yma_length"] = yma_length;
    row["kappa_closed_form"] = closed;
    row["valid_index_code"] = valid;
    bool ok = valid && yma_length == closed;

    if (instance.num_messages <= alpha_cap) {
      unsigned alpha = indexcoding::alpha_brute(instance, alpha_cap);
      row["alpha"] = alpha;
      ok = ok && alpha == closed;
      std::uint64_t free_bits = 0;
      for (const auto& receiver : instance.receivers)
        free_bits += std::popcount(receiver.side_info);
      if (free_bits <= minrank_cap) {
        unsigned minrank = indexcoding::min_rank_brute(instance, minrank_cap, alpha);
        row["min_rank"] = minrank;
        ok = ok && minrank == closed;
      } else {
        row["min_rank"] = nullptr;  // alpha-only: free bits above cap
        ++minrank_skipped;
      }
    } else {
      row["alpha"] = nullptr;
      row["min_rank"] = nullptr;
      ++minrank_skipped;
    }
    row["ok"] = ok;
    all_ok = all_ok && ok;
    rows.push_back(row);

    int position = cfg.num_users - 1;
    while (position >= 0 && demand[position] == cfg.num_files) demand[position--] = 1;
    if (position < 0) break;
    ++demand[position];
  }

  json report;
  report["format_version"] = kFormatVersion;
  report["command"] = "verify";
  report["config"] = config_json(cfg);
  report["rows"] = rows;
  report["alpha_cap"] = alpha_cap;
  report["minrank_cap"] = minrank_cap;
  report["minrank_skipped"] = minrank_skipped;
  report["all_ok"] = all_ok;

  if (spec.format == "json") {
    emit(spec, dump(report));
  } else {
    std::ostringstream text;
    text << "verify N=" << cfg.num_files << " K=" << cfg.num_users
         << " M=" << cfg.cache_size.to_string() << ": " << rows.size() << " demand vectors\n";
    for (const auto& row : rows) {
      text << "  d=[";
      bool first = true;
      for (const auto& entry : row["demand"]) {
        if (!first) text << ",";
        text << entry;
        first = false;
      }
      text << "] yma=" << row["yma_length"] << " kappa=" << row["kappa_closed_form"];
      if (!row["alpha"].is_null()) text << " alpha=" << row["alpha"];
      if (!row["min_rank"].is_null())
        text << " minrank=" << row["min_rank"];
      else
        text << " (alpha-only)";
      text << (row["ok"].get<bool>() ? " ok" : " MISMATCH") << "\n";
    }
    text << (all_ok ? "all demands verified\n" : "MISMATCH FOUND\n");
    emit(spec, text.str());
  }
  return all_ok ? 0 : 1;
}

int cmd_nq(RunSpec spec, unsigned k, unsigned d, bool no_table) {
  if (spec.format == "csv") throw std::domain_error("nq: csv output not supported");
  codes::LinearCode code = codes::find_optimal_code(k, d, {.use_table = !no_table});
  std::uint64_t griesmer = codes::griesmer_min_length(k, d);
  std::uint64_t sphere = codes::sphere_packing_min_length(k, d);
  std::uint64_t bound = std::max(griesmer, sphere);
  std::string tight;
  if (code.length() > bound)
    tight = "exhaustive-search";
  else if (griesmer >= sphere)
    tight = "griesmer";
  else
    tight = "sphere-packing";

  json report;
  report["format_version"] = kFormatVersion;
  report["command"] = "nq";
  report["k"] = k;
  report["d"] = d;
  report["n"] = code.length();
  report["griesmer"] = griesmer;
  report["sphere_packing"] = sphere;
  report["tight_bound"] = tight;
  report["generator"] = code.generator().to_strings();

  if (spec.format == "json") {
    emit(spec, dump(report));
  } else {
    std::ostringstream text;
    text << "N2[" << k << "," << d << "] = " << code.length() << " (griesmer " << griesmer
         << ", sphere-packing " << sphere << ", " << tight << ")\n";
    for (const auto& row : code.generator().to_strings()) text << "  " << row << "\n";
    emit(spec, text.str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"error-correcting coded caching toolkit"};
  app.require_subcommand(1);

  RunSpec spec;
  int points = 33;
  std::string rate_kind = "peak";
  unsigned alpha_cap = 16;
  unsigned minrank_cap = 24;
  unsigned nq_k = 0;
  unsigned nq_d = 0;
  bool no_table = false;

  auto add_common = [&](CLI::App* cmd, bool with_problem) {
    if (with_problem) {
      cmd->add_option("--N", spec.num_files, "number of files");
      cmd->add_option("--K", spec.num_users, "number of users");
      cmd->add_option("--M", spec.cache_size, "cache size in files (integer, decimal or p/q)");
      cmd->add_option("--subfile-bits", spec.subfile_bits, "bits per subfile");
      cmd->add_option("--delta", spec.delta, "number of correctable transmission errors");
      cmd->add_option("--seed", spec.seed, "seed for file contents / random errors");
      cmd->add_option("--config", spec.config_path, "JSON config file (overrides flags)");
    }
    cmd->add_option("--format", spec.format, "output format: json, csv or pretty");
    cmd->add_option("--out", spec.out_path, "write output to a file instead of stdout");
  };

  CLI::App* simulate = app.add_subcommand("simulate", "inject errors and check decoding");
  add_common(simulate, true);
  simulate->add_option("--demand", spec.demand_text, "comma-separated 1-based file per user");
  simulate->add_option("--errors", spec.error_mode, "adversarial or random");
  simulate->add_option("--trials", spec.trials, "trial count for --errors random");
  simulate->add_option("--max-errors", spec.max_errors,
                       "corrupt up to this many blocks (default: delta)");

  CLI::App* rates = app.add_subcommand("rates", "exact average and peak rates");
  add_common(rates, true);

  CLI::App* curve = app.add_subcommand("curve", "rate-memory envelope");
  add_common(curve, true);
  curve->add_option("--points", points, "number of sample points on [0, N]");
  curve->add_option("--rate", rate_kind, "average or peak");
  curve->add_option("--demand", spec.demand_text)->group("");  // rejected, for the error message

  CLI::App* verify = app.add_subcommand("verify", "optimality chain over all demands");
  add_common(verify, true);
  verify->add_option("--alpha-cap", alpha_cap, "message-count cap for the alpha search");
  verify->add_option("--minrank-cap", minrank_cap, "free-bit cap for the min-rank search");

  CLI::App* nq = app.add_subcommand("nq", "shortest linear code search");
  add_common(nq, false);
  nq->add_option("--k", nq_k, "code dimension")->required();
  nq->add_option("--d", nq_d, "minimum distance")->required();
  nq->add_flag("--no-table", no_table, "ignore the known-lengths table, search from the bounds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(spec);
    if (rates->parsed()) return cmd_rates(spec);
    if (curve->parsed()) return cmd_curve(spec, points, rate_kind);
    if (verify->parsed()) return cmd_verify(spec, alpha_cap, minrank_cap);
    if (nq->parsed()) return cmd_nq(spec, nq_k, nq_d, no_table);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
