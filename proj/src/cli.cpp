#include "flashmod/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "flashmod/ballsbins.hpp"
#include "flashmod/records.hpp"
#include "flashmod/sim.hpp"
#include "json.hpp"

namespace flashmod {
namespace {

using Row = nlohmann::ordered_json;

// Bad flags or unusable configuration; maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string cell_text(const nlohmann::ordered_json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return format_real(v.get<double>());
  return v.dump();
}

void write_table(std::ostream& out, const std::vector<std::string>& columns,
                 const std::vector<Row>& rows, RecordFormat format) {
  if (format == RecordFormat::Json) {
    out << nlohmann::ordered_json(rows).dump(2) << '\n';
    return;
  }
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << '\n';
  for (const Row& row : rows) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      out << (i ? "," : "") << cell_text(row.at(columns[i]));
    }
    out << '\n';
  }
}

RecordFormat resolve_format(const std::string& format, const std::string& out_path) {
  if (!format.empty()) {
    if (auto f = parse_record_format(format)) return *f;
    throw UsageError("unknown format '" + format + "' (expected csv or json)");
  }
  if (out_path.size() >= 5 && out_path.ends_with(".json")) return RecordFormat::Json;
  return RecordFormat::Csv;
}

// Writes to `path`, or to `out` when path is empty or "-".
template <class Writer>
void deliver(const std::string& path, std::ostream& out, Writer&& writer) {
  if (path.empty() || path == "-") {
    writer(out);
    return;
  }
  std::ostringstream buffer;
  writer(buffer);
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open " + path + " for writing");
  file << buffer.str();
  file.flush();
  if (!file) throw std::runtime_error("failed writing " + path);
}

struct SimulateConfig {
  std::string code;
  unsigned k = 0;
  unsigned l = 2;
  std::vector<unsigned> qs;
  std::uint64_t cycles = 1000;
  std::uint64_t seed = 1;
  std::string dist;
  std::string dist_file;
  std::string out_path;
  std::string format;
  unsigned threads = 1;
};

int run_simulate(const SimulateConfig& cfg, std::ostream& out) {
  const auto kind = parse_code_kind(cfg.code);
  if (!kind) throw UsageError("unknown code '" + cfg.code + "'");
  const RecordFormat format = resolve_format(cfg.format, cfg.out_path);

  std::optional<DistributionSpec> dist;
  try {
    if (!cfg.dist.empty()) dist = parse_distribution(cfg.dist);
    if (!cfg.dist_file.empty()) dist = read_distribution_file(cfg.dist_file);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }

  std::vector<CodeParams> grid;
  for (unsigned q : cfg.qs) {
    try {
      grid.push_back(CodeParams::make(*kind, cfg.k, q, cfg.l));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  const std::uint64_t values = grid.front().alphabet_size();
  if (dist && dist->size() != values) {
    throw UsageError("distribution has " + std::to_string(dist->size()) + " entries, need l^k = " +
                     std::to_string(values));
  }
  const DistributionSpec input = dist ? *dist : DistributionSpec::uniform(values);

  std::vector<ExperimentStats> stats;
  ExperimentOptions options;
  options.threads = cfg.threads;
  for (const CodeParams& params : grid) {
    stats.push_back(run_experiment(params, input, cfg.cycles, cfg.seed, options));
  }
  deliver(cfg.out_path, out, [&](std::ostream& os) { write_records(os, stats, format); });
  return kExitOk;
}

struct BallsBinsConfig {
  std::string mode = "overflow";
  std::vector<std::size_t> bins;
  std::vector<unsigned> choices{1, 2};
  std::vector<unsigned> qs;
  std::vector<std::uint64_t> balls;
  std::uint64_t trials = 100;
  std::uint64_t seed = 1;
  std::string out_path;
  std::string format;
};

int run_ballsbins(const BallsBinsConfig& cfg, std::ostream& out) {
  const RecordFormat format = resolve_format(cfg.format, cfg.out_path);
  std::vector<Row> rows;
  std::vector<std::string> columns;
  if (cfg.mode == "overflow") {
    if (cfg.qs.empty()) throw UsageError("overflow mode needs --q");
    columns = {"mode", "n", "d", "q", "trials", "mean_balls", "eta", "seed"};
    for (std::size_t n : cfg.bins) {
      for (unsigned d : cfg.choices) {
        for (unsigned q : cfg.qs) {
          const OverflowSummary s = overflow_experiment(n, q, d, cfg.trials, cfg.seed);
          rows.push_back({{"mode", "overflow"}, {"n", n}, {"d", d}, {"q", q},
                          {"trials", cfg.trials}, {"mean_balls", s.mean_balls},
                          {"eta", s.eta}, {"seed", cfg.seed}});
        }
      }
    }
  } else if (cfg.mode == "throw") {
    if (cfg.balls.empty()) throw UsageError("throw mode needs --m");
    columns = {"mode", "n", "d", "m", "trials", "mean_max_load", "predicted_max_load", "seed"};
    for (std::size_t n : cfg.bins) {
      for (unsigned d : cfg.choices) {
        for (std::uint64_t m : cfg.balls) {
          std::uint64_t sum = 0;
          for (std::uint64_t t = 0; t < cfg.trials; ++t) {
            Rng rng(split_seed(cfg.seed, t));
            sum += throw_balls(n, m, d, rng).max_load();
          }
          const double mean = static_cast<double>(sum) / static_cast<double>(cfg.trials);
          double predicted = 0;
          if (n >= 3 && m >= 1) {
            predicted = max_load_prediction(static_cast<double>(n), static_cast<double>(m), d)
                            .predicted_max_load;
          }
          rows.push_back({{"mode", "throw"}, {"n", n}, {"d", d}, {"m", m},
                          {"trials", cfg.trials}, {"mean_max_load", mean},
                          {"predicted_max_load", predicted}, {"seed", cfg.seed}});
        }
      }
    }
  } else {
    throw UsageError("unknown mode '" + cfg.mode + "' (expected overflow or throw)");
  }
  deliver(cfg.out_path, out, [&](std::ostream& os) { write_table(os, columns, rows, format); });
  return kExitOk;
}

struct BoundsConfig {
  unsigned k = 3;
  unsigned l = 2;
  std::vector<double> dc;
  std::vector<double> lambert;
  std::vector<std::string> maxload;
};

int run_bounds(const BoundsConfig& cfg, std::ostream& out) {
  GammaBounds g;
  try {
    g = gamma_upper_bounds(cfg.k, cfg.l);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  out << "gamma_upper_bounds k=" << cfg.k << " l=" << cfg.l
      << " single_change=" << format_real(g.single_change)
      << " arbitrary_change=" << format_real(g.arbitrary_change) << '\n';
  for (double c : cfg.dc) {
    if (!(c > 0)) throw UsageError("--dc needs c > 0");
    out << "solve_dc c=" << format_real(c) << " d=" << format_real(solve_dc(c)) << '\n';
  }
  for (double x : cfg.lambert) {
    double w = 0;
    try {
      w = lambert_w0(x);
    } catch (const std::domain_error& e) {
      throw UsageError(e.what());
    }
    out << "lambert_w0 x=" << format_real(x) << " w=" << format_real(w) << '\n';
  }
  for (const std::string& triple : cfg.maxload) {
    double n = 0, m = 0;
    unsigned d = 0;
    char c1 = 0, c2 = 0;
    std::istringstream in(triple);
    if (!(in >> n >> c1 >> m >> c2 >> d) || c1 != ',' || c2 != ',' || !in.eof()) {
      throw UsageError("--maxload expects n,m,d, got '" + triple + "'");
    }
    RegimePrediction p;
    try {
      p = max_load_prediction(n, m, d);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    out << "max_load_prediction n=" << format_real(n) << " m=" << format_real(m) << " d=" << d
        << " regime=" << to_string(p.regime) << " predicted=" << format_real(p.predicted_max_load)
        << '\n';
  }
  return kExitOk;
}

struct RoundTripConfig {
  std::string code = "both";
  std::vector<unsigned> ks{1, 2, 3};
  std::vector<unsigned> qs{4, 8, 16};
  std::uint64_t writes = 10000;
  std::uint64_t seed = 1;
};

int run_roundtrip(const RoundTripConfig& cfg, std::ostream& out) {
  std::vector<CodeKind> kinds;
  if (cfg.code == "both") {
    kinds = {CodeKind::SelfRandomized, CodeKind::LoadBalancing};
  } else if (auto kind = parse_code_kind(cfg.code)) {
    kinds = {*kind};
  } else {
    throw UsageError("unknown code '" + cfg.code + "'");
  }
  std::uint64_t passed = 0;
  std::uint64_t failed = 0;
  out << "code,k,q,writes,written,noops,erasures,failures\n";
  for (CodeKind kind : kinds) {
    for (unsigned k : cfg.ks) {
      for (unsigned q : cfg.qs) {
        CodeParams params;
        try {
          params = CodeParams::make(kind, k, q);
        } catch (const std::invalid_argument& e) {
          throw UsageError(e.what());
        }
        const RoundTripReport r = roundtrip_check(params, cfg.writes, split_seed(cfg.seed, k * 65537u + q));
        out << to_string(kind) << ',' << k << ',' << q << ',' << r.writes << ',' << r.written << ','
            << r.noops << ',' << r.erasures << ',' << r.failures << '\n';
        (r.passed() ? passed : failed) += 1;
      }
    }
  }
  out << "roundtrip: " << passed << " passed, " << failed << " failed\n";
  return failed == 0 ? kExitOk : kExitFailure;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Flash-memory modulation codes: simulation and balls-into-bins analysis", "flashmod"};
  app.require_subcommand(1);

  SimulateConfig sim;
  auto* simulate = app.add_subcommand("simulate", "Sweep q and report eta / gamma per grid point");
  simulate->add_option("--code", sim.code, "self-randomized | load-balancing")->required();
  simulate->add_option("--k", sim.k, "Variables per group")->required()->check(CLI::PositiveNumber);
  simulate->add_option("--l", sim.l, "Alphabet size (only 2 is supported)")->capture_default_str();
  simulate->add_option("--q", sim.qs, "Comma-separated cell level counts")
      ->required()
      ->delimiter(',')
      ->check(CLI::Range(2u, kMaxLevels));
  simulate->add_option("--cycles", sim.cycles, "Erasure cycles per grid point")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  simulate->add_option("--seed", sim.seed, "Master seed")->envname("FLASHMOD_SEED")->capture_default_str();
  auto* dist_opt = simulate->add_option("--dist", sim.dist, "Inline probabilities, comma-separated");
  simulate->add_option("--dist-file", sim.dist_file, "Distribution file, one probability per line")
      ->excludes(dist_opt);
  simulate->add_option("--out", sim.out_path, "Output path (default: stdout)");
  simulate->add_option("--format", sim.format, "csv | json (default: from --out extension)");
  simulate->add_option("--threads", sim.threads, "Worker threads per grid point")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  BallsBinsConfig bb;
  auto* ballsbins = app.add_subcommand("ballsbins", "Random-loading sweeps with d choices");
  ballsbins->add_option("--mode", bb.mode, "overflow | throw")->capture_default_str();
  ballsbins->add_option("--n", bb.bins, "Comma-separated bin counts")
      ->required()
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  ballsbins->add_option("--d", bb.choices, "Comma-separated choice counts")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  ballsbins->add_option("--q", bb.qs, "Comma-separated bin capacities + 1 (overflow mode)")
      ->delimiter(',')
      ->check(CLI::Range(2u, kMaxLevels));
  ballsbins->add_option("--m", bb.balls, "Comma-separated ball counts (throw mode)")->delimiter(',');
  ballsbins->add_option("--trials", bb.trials)->capture_default_str()->check(CLI::PositiveNumber);
  ballsbins->add_option("--seed", bb.seed)->envname("FLASHMOD_SEED")->capture_default_str();
  ballsbins->add_option("--out", bb.out_path, "Output path (default: stdout)");
  ballsbins->add_option("--format", bb.format, "csv | json");

  BoundsConfig bounds;
  auto* bounds_cmd = app.add_subcommand("bounds", "Evaluate the analytic bounds and solvers");
  bounds_cmd->add_option("--k", bounds.k)->capture_default_str();
  bounds_cmd->add_option("--l", bounds.l)->capture_default_str();
  bounds_cmd->add_option("--dc", bounds.dc, "Comma-separated c values; solves d(c) for each")->delimiter(',');
  bounds_cmd->add_option("--lambert", bounds.lambert, "Comma-separated x values; evaluates W0(x) for each")->delimiter(',');
  bounds_cmd->add_option("--maxload", bounds.maxload, "Max-load prediction for n,m,d (repeatable)");

  RoundTripConfig rt;
  auto* roundtrip = app.add_subcommand("roundtrip", "Encode/decode property suite");
  roundtrip->add_option("--code", rt.code, "self-randomized | load-balancing | both")
      ->capture_default_str();
  roundtrip->add_option("--k", rt.ks)->delimiter(',')->check(CLI::PositiveNumber);
  roundtrip->add_option("--q", rt.qs)->delimiter(',')->check(CLI::Range(2u, kMaxLevels));
  roundtrip->add_option("--writes", rt.writes)->capture_default_str();
  roundtrip->add_option("--seed", rt.seed)->envname("FLASHMOD_SEED")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();  // program name
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*simulate) return run_simulate(sim, out);
    if (*ballsbins) return run_ballsbins(bb, out);
    if (*bounds_cmd) return run_bounds(bounds, out);
    if (*roundtrip) return run_roundtrip(rt, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n" << app.help() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace flashmod
