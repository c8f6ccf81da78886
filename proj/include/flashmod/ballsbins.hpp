#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "flashmod/rng.hpp"

namespace flashmod {

struct LoadVector {
  std::vector<std::uint32_t> loads;
  std::uint64_t balls = 0;

  std::uint32_t max_load() const;
};

// Throws `balls` balls into `bins` bins. Each ball samples `choices` bins
// uniformly with replacement and lands in the least loaded one (ties go to
// the lowest bin index). choices = 1 is plain uniform placement.
LoadVector throw_balls(std::size_t bins, std::uint64_t balls, unsigned choices, Rng& rng);

// Number of balls placed before the first ball whose selected bin already
// holds q-1 balls. Same selection rule as throw_balls.
std::uint64_t balls_until_overflow(std::size_t bins, unsigned q, unsigned choices, Rng& rng);

struct OverflowSummary {
  std::size_t bins = 0;
  unsigned q = 0;
  unsigned choices = 0;
  std::uint64_t trials = 0;
  double mean_balls = 0;
  // 1 - mean_balls / (bins (q-1)): the random-loading loss factor.
  double eta = 0;
};

// Runs `trials` independent balls_until_overflow trials, trial i seeded
// with split_seed(seed, i).
OverflowSummary overflow_experiment(std::size_t bins, unsigned q, unsigned choices,
                                    std::uint64_t trials, std::uint64_t seed);

// Union bound on a given bin receiving at least k of m balls:
// min(1, (m e / (n k))^k), evaluated in log space.
double collision_bound(double m, double n, double k);

enum class LoadRegime { LinearM, NLogN, Polynomial, TwoChoice };

std::string_view to_string(LoadRegime regime);

struct RegimePrediction {
  LoadRegime regime;
  double predicted_max_load;
};

// Point estimate of the maximum load after m balls into n bins (n >= 3).
//   d = 1, m <= n ln n / e:  ln n / ln(n ln n / m)
//   d = 1, otherwise:        (d(c) - 1) ln n with c = m / (n ln n);
//                            labelled Polynomial once m >= n^2
//   d >= 2:                  m/n + ln ln n / ln d
RegimePrediction max_load_prediction(double n, double m, unsigned d);

// Largest root of x (ln c - ln x + 1) + 1 - c = 0 for c > 0. Always > c.
double solve_dc(double c);

// Principal branch of Lambert W on [-1/e, inf). Throws std::domain_error
// below -1/e.
double lambert_w0(double x);

}  // namespace flashmod
