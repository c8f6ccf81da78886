#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "flashmod/codes.hpp"
#include "flashmod/core.hpp"
#include "flashmod/rng.hpp"

namespace flashmod {

// Categorical input law over {0, ..., size-1}.
class DistributionSpec {
 public:
  // Throws std::invalid_argument on negative entries or |sum - 1| >= 1e-9.
  explicit DistributionSpec(std::vector<double> probs);
  static DistributionSpec uniform(std::size_t size);
  static DistributionSpec point_mass(std::size_t size, std::size_t at);

  std::span<const double> probs() const { return probs_; }
  std::size_t size() const { return probs_.size(); }
  std::span<const double> cumulative() const { return cumulative_; }
  bool is_uniform() const;

 private:
  std::vector<double> probs_;
  std::vector<double> cumulative_;
};

std::uint64_t sample_input(const DistributionSpec& dist, Rng& rng);

// Shannon entropy in bits; 0 log 0 = 0.
double entropy_bits(const DistributionSpec& dist);

struct CycleStats {
  std::uint64_t r_inc = 0;    // writes that raised a level
  std::uint64_t r_total = 0;  // r_inc plus NoOp writes
  Level final_max_level = 0;
  bool truncated = false;     // hit the write budget before any erasure

  bool operator==(const CycleStats&) const = default;
};

// Write budget used when none is given: large enough that only inputs with
// (almost) all mass on one value can exhaust it.
std::uint64_t default_write_budget(const CodeParams& params);

// One erasure cycle from the all-zero state. `next_input` is called once per
// write. The write that triggers EraseRequired is dropped and ends the cycle.
template <class InputSource>
CycleStats run_cycle_with(const ModulationCode& code, InputSource&& next_input,
                          std::uint64_t write_budget) {
  CellState state = code.fresh_state();
  CycleStats stats;
  for (;;) {
    if (stats.r_total >= write_budget) {
      stats.truncated = true;
      break;
    }
    const WriteOutcome outcome = code.encode(state, next_input());
    if (outcome.is_erase_required()) break;
    ++stats.r_total;
    if (outcome.is_written()) ++stats.r_inc;
  }
  stats.final_max_level = state.max_level();
  return stats;
}

CycleStats run_cycle(const ModulationCode& code, const DistributionSpec& dist, Rng& rng,
                     std::uint64_t write_budget = 0);

struct ExperimentStats {
  CodeKind code = CodeKind::SelfRandomized;
  unsigned k = 0;
  unsigned l = 0;
  unsigned q = 0;
  std::uint64_t n = 0;
  std::uint64_t cycles = 0;
  double mean_r_inc = 0;
  double mean_r_total = 0;
  double eta = 0;
  double gamma = 0;
  std::uint64_t seed = 0;
  std::uint64_t truncated_cycles = 0;
  std::vector<std::uint64_t> r_inc_samples;  // per cycle, in cycle order

  bool operator==(const ExperimentStats&) const = default;
};

struct ExperimentOptions {
  unsigned threads = 1;
  std::uint64_t write_budget = 0;  // 0 selects default_write_budget
};

// Runs `cycles` independent cycles; cycle i draws its inputs from
// Rng(split_seed(master_seed, i)). Results do not depend on `threads`.
//   eta   = 1 - mean(r_inc) / (n (q-1))
//   gamma = mean(r_inc) * entropy_bits(dist) / (n (q-1))
ExperimentStats run_experiment(const CodeParams& params, const DistributionSpec& dist,
                               std::uint64_t cycles, std::uint64_t master_seed,
                               const ExperimentOptions& options = {});

struct GammaBounds {
  double single_change;     // log2(k l)
  double arbitrary_change;  // k log2(l)
};

GammaBounds gamma_upper_bounds(unsigned k, unsigned l);

// Bootstrap estimate of E[min of N draws] from the empirical law of
// `samples`, averaged over `resamples` rounds.
double min_of_n_expectation(std::span<const double> samples, unsigned n_cells,
                            std::size_t resamples, Rng& rng);

struct RoundTripReport {
  CodeParams params;
  std::uint64_t writes = 0;     // encode calls
  std::uint64_t written = 0;
  std::uint64_t noops = 0;
  std::uint64_t erasures = 0;
  std::uint64_t failures = 0;   // any violated check

  bool passed() const { return failures == 0; }
};

// Drives `writes` uniform random writes through a fresh code, erasing on
// EraseRequired, and checks after every write that
//  - the state decodes to the value just written (Written and NoOp),
//  - a Written raised exactly one level by one and a NoOp/EraseRequired
//    left the state untouched,
//  - decoding a copy rebuilt from the raw levels gives the same value.
RoundTripReport roundtrip_check(const CodeParams& params, std::uint64_t writes,
                                std::uint64_t seed);

}  // namespace flashmod
