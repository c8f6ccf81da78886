#include "flashmod/records.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace flashmod {
namespace {

double parse_probability(std::string_view token) {
  const std::string text(token);
  std::size_t used = 0;
  double value = 0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a probability: '" + text + "'");
  }
  while (used < text.size() && std::isspace(static_cast<unsigned char>(text[used]))) ++used;
  if (used != text.size()) throw std::invalid_argument("not a probability: '" + text + "'");
  return value;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

std::optional<RecordFormat> parse_record_format(std::string_view name) {
  if (name == "csv") return RecordFormat::Csv;
  if (name == "json") return RecordFormat::Json;
  return std::nullopt;
}

std::string format_real(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_records(std::ostream& out, std::span<const ExperimentStats> stats, RecordFormat format) {
  if (format == RecordFormat::Csv) {
    for (std::size_t i = 0; i < std::size(kRecordColumns); ++i) {
      out << (i ? "," : "") << kRecordColumns[i];
    }
    out << '\n';
    for (const ExperimentStats& s : stats) {
      out << to_string(s.code) << ',' << s.k << ',' << s.l << ',' << s.q << ',' << s.n << ','
          << s.cycles << ',' << format_real(s.mean_r_inc) << ',' << format_real(s.mean_r_total)
          << ',' << format_real(s.eta) << ',' << format_real(s.gamma) << ',' << s.seed << '\n';
    }
    return;
  }
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const ExperimentStats& s : stats) {
    rows.push_back({{"code", std::string(to_string(s.code))},
                    {"k", s.k},
                    {"l", s.l},
                    {"q", s.q},
                    {"n", s.n},
                    {"cycles", s.cycles},
                    {"mean_r_inc", s.mean_r_inc},
                    {"mean_r_total", s.mean_r_total},
                    {"eta", s.eta},
                    {"gamma", s.gamma},
                    {"seed", s.seed}});
  }
  out << rows.dump(2) << '\n';
}

void emit_records(std::span<const ExperimentStats> stats, RecordFormat format,
                  const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_records(out, stats, format);
  out.flush();
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

DistributionSpec read_distribution_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read distribution file " + path.string());
  std::vector<double> probs;
  std::string line;
  while (std::getline(in, line)) {
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    probs.push_back(parse_probability(view));
  }
  return DistributionSpec(std::move(probs));
}

DistributionSpec parse_distribution(std::string_view text) {
  std::vector<double> probs;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = text.find(',', start);
    const std::string_view token = trim(text.substr(start, comma - start));
    if (token.empty()) throw std::invalid_argument("empty entry in probability list");
    probs.push_back(parse_probability(token));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return DistributionSpec(std::move(probs));
}

}  // namespace flashmod
