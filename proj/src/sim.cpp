#include "flashmod/sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

namespace flashmod {

DistributionSpec::DistributionSpec(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw std::invalid_argument("distribution is empty");
  double sum = 0;
  cumulative_.reserve(probs_.size());
  for (double p : probs_) {
    if (!(p >= 0) || !std::isfinite(p)) {
      throw std::invalid_argument("probabilities must be finite and non-negative");
    }
    sum += p;
    cumulative_.push_back(sum);
  }
  if (std::abs(sum - 1.0) >= 1e-9) {
    throw std::invalid_argument("probabilities sum to " + std::to_string(sum) + ", not 1");
  }
  // Guard the inverse-CDF lookup against rounding in the last partial sum.
  cumulative_.back() = 1.0;
}

DistributionSpec DistributionSpec::uniform(std::size_t size) {
  if (size == 0) throw std::invalid_argument("distribution is empty");
  return DistributionSpec(std::vector<double>(size, 1.0 / static_cast<double>(size)));
}

DistributionSpec DistributionSpec::point_mass(std::size_t size, std::size_t at) {
  if (at >= size) throw std::invalid_argument("point mass outside the support");
  std::vector<double> probs(size, 0.0);
  probs[at] = 1.0;
  return DistributionSpec(std::move(probs));
}

bool DistributionSpec::is_uniform() const {
  return std::all_of(probs_.begin(), probs_.end(),
                     [&](double p) { return p == probs_.front(); });
}

std::uint64_t sample_input(const DistributionSpec& dist, Rng& rng) {
  const auto cdf = dist.cumulative();
  const double u = rng.uniform01();
  // First index with cdf > u; zero-probability entries are never selected.
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  return static_cast<std::uint64_t>(std::min<std::ptrdiff_t>(it - cdf.begin(),
                                                             static_cast<std::ptrdiff_t>(cdf.size()) - 1));
}

double entropy_bits(const DistributionSpec& dist) {
  double h = 0;
  for (double p : dist.probs()) {
    if (p > 0) h -= p * std::log2(p);
  }
  return h;
}

std::uint64_t default_write_budget(const CodeParams& params) {
  return std::max<std::uint64_t>(1'000'000, 1000 * params.capacity());
}

CycleStats run_cycle(const ModulationCode& code, const DistributionSpec& dist, Rng& rng,
                     std::uint64_t write_budget) {
  if (dist.size() != code.params().alphabet_size()) {
    throw std::invalid_argument("distribution size does not match l^k");
  }
  if (write_budget == 0) write_budget = default_write_budget(code.params());
  return run_cycle_with(code, [&] { return sample_input(dist, rng); }, write_budget);
}

ExperimentStats run_experiment(const CodeParams& params, const DistributionSpec& dist,
                               std::uint64_t cycles, std::uint64_t master_seed,
                               const ExperimentOptions& options) {
  if (cycles < 1) throw std::invalid_argument("need at least one cycle");
  const std::unique_ptr<ModulationCode> code = make_code(params);
  if (dist.size() != params.alphabet_size()) {
    throw std::invalid_argument("distribution size does not match l^k");
  }
  const std::uint64_t budget =
      options.write_budget == 0 ? default_write_budget(params) : options.write_budget;

  std::vector<CycleStats> per_cycle(cycles);
  auto work = [&](std::uint64_t begin, std::uint64_t stride) {
    for (std::uint64_t i = begin; i < cycles; i += stride) {
      Rng rng(split_seed(master_seed, i));
      per_cycle[i] = run_cycle(*code, dist, rng, budget);
    }
  };
  const unsigned threads =
      static_cast<unsigned>(std::clamp<std::uint64_t>(options.threads, 1, cycles));
  if (threads == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
  }

  ExperimentStats stats;
  stats.code = params.kind;
  stats.k = params.k;
  stats.l = params.l;
  stats.q = params.q;
  stats.n = params.n;
  stats.cycles = cycles;
  stats.seed = master_seed;
  stats.r_inc_samples.reserve(cycles);
  // Integer sums, so the aggregate is exact and order independent.
  std::uint64_t sum_inc = 0;
  std::uint64_t sum_total = 0;
  for (const CycleStats& c : per_cycle) {
    sum_inc += c.r_inc;
    sum_total += c.r_total;
    stats.truncated_cycles += c.truncated ? 1 : 0;
    stats.r_inc_samples.push_back(c.r_inc);
  }
  const double capacity = static_cast<double>(params.capacity());
  stats.mean_r_inc = static_cast<double>(sum_inc) / static_cast<double>(cycles);
  stats.mean_r_total = static_cast<double>(sum_total) / static_cast<double>(cycles);
  stats.eta = 1.0 - stats.mean_r_inc / capacity;
  stats.gamma = stats.mean_r_inc * entropy_bits(dist) / capacity;
  return stats;
}

GammaBounds gamma_upper_bounds(unsigned k, unsigned l) {
  if (k < 1 || l < 2) throw std::invalid_argument("need k >= 1 and l >= 2");
  return {std::log2(static_cast<double>(k) * l), k * std::log2(static_cast<double>(l))};
}

double min_of_n_expectation(std::span<const double> samples, unsigned n_cells,
                            std::size_t resamples, Rng& rng) {
  if (samples.empty()) throw std::invalid_argument("need at least one sample");
  if (n_cells < 1) throw std::invalid_argument("N must be >= 1");
  if (resamples < 1) throw std::invalid_argument("need at least one resample");
  double acc = 0;
  for (std::size_t r = 0; r < resamples; ++r) {
    double lowest = samples[rng.below(samples.size())];
    for (unsigned j = 1; j < n_cells; ++j) {
      lowest = std::min(lowest, samples[rng.below(samples.size())]);
    }
    acc += lowest;
  }
  return acc / static_cast<double>(resamples);
}

RoundTripReport roundtrip_check(const CodeParams& params, std::uint64_t writes,
                                std::uint64_t seed) {
  const std::unique_ptr<ModulationCode> code = make_code(params);
  const std::uint64_t values = params.alphabet_size();
  Rng rng(seed);
  CellState state = code->fresh_state();
  RoundTripReport report;
  report.params = params;
  for (std::uint64_t t = 0; t < writes; ++t) {
    const std::uint64_t x = rng.below(values);
    const CellState before = state;
    const WriteOutcome outcome = code->encode(state, x);
    ++report.writes;
    bool ok = true;
    if (outcome.is_erase_required()) {
      ++report.erasures;
      ok = state == before;
      state.erase();
    } else {
      if (outcome.is_written()) {
        ++report.written;
        const std::size_t cell = outcome.cell();
        ok = cell < state.size() && l1_norm(state) == l1_norm(before) + 1 &&
             state[cell] == before[cell] + 1;
        for (std::size_t i = 0; ok && i < state.size(); ++i) {
          ok = i == cell || state[i] == before[i];
        }
      } else {
        ++report.noops;
        ok = state == before;
      }
      const std::uint64_t decoded = code->decode(state);
      const CellState rebuilt(std::vector<Level>(state.levels().begin(), state.levels().end()),
                              state.q());
      ok = ok && decoded == x && code->decode(rebuilt) == decoded;
    }
    if (!ok) ++report.failures;
  }
  return report;
}

}  // namespace flashmod
