#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "flashmod/sim.hpp"

namespace flashmod {

enum class RecordFormat { Csv, Json };

std::optional<RecordFormat> parse_record_format(std::string_view name);

// Column order of simulate output, shared by CSV header and JSON keys.
inline constexpr std::string_view kRecordColumns[] = {
    "code", "k", "l", "q", "n", "cycles", "mean_r_inc", "mean_r_total", "eta", "gamma", "seed"};

// Reals are written with %.17g so they round-trip exactly.
std::string format_real(double value);

void write_records(std::ostream& out, std::span<const ExperimentStats> stats, RecordFormat format);

// Throws std::runtime_error if the file cannot be written.
void emit_records(std::span<const ExperimentStats> stats, RecordFormat format,
                  const std::filesystem::path& path);

// Plain text, one probability per line; blank lines and '#' comments are
// skipped. Throws std::runtime_error if unreadable, std::invalid_argument if
// malformed.
DistributionSpec read_distribution_file(const std::filesystem::path& path);

// Comma-separated probabilities, e.g. "0.5,0.25,0.25".
DistributionSpec parse_distribution(std::string_view text);

}  // namespace flashmod
