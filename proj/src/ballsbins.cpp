#include "flashmod/ballsbins.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace flashmod {
namespace {

// Draws min(choices, bins) distinct bins and returns the least loaded one,
// lowest index on ties.
class BinSelector {
 public:
  BinSelector(std::size_t bins, unsigned choices)
      : bins_(bins), choices_(static_cast<std::size_t>(std::min<std::uint64_t>(choices, bins))) {
    sampled_.reserve(choices_);
  }

  std::size_t select(const std::vector<std::uint32_t>& loads, Rng& rng) {
    if (choices_ == 1) return static_cast<std::size_t>(rng.below(bins_));
    if (choices_ == bins_) {
      return static_cast<std::size_t>(std::min_element(loads.begin(), loads.end()) - loads.begin());
    }
    sampled_.clear();
    while (sampled_.size() < choices_) {
      const auto bin = static_cast<std::size_t>(rng.below(bins_));
      if (std::find(sampled_.begin(), sampled_.end(), bin) == sampled_.end()) {
        sampled_.push_back(bin);
      }
    }
    std::size_t best = sampled_.front();
    for (std::size_t bin : sampled_) {
      if (loads[bin] < loads[best] || (loads[bin] == loads[best] && bin < best)) best = bin;
    }
    return best;
  }

 private:
  std::size_t bins_;
  std::size_t choices_;
  std::vector<std::size_t> sampled_;
};

void check_bins(std::size_t bins, unsigned choices) {
  if (bins < 1) throw std::invalid_argument("need at least one bin");
  if (choices < 1) throw std::invalid_argument("need at least one choice");
}

}  // namespace

std::uint32_t LoadVector::max_load() const {
  if (loads.empty()) return 0;
  return *std::max_element(loads.begin(), loads.end());
}

LoadVector throw_balls(std::size_t bins, std::uint64_t balls, unsigned choices, Rng& rng) {
  check_bins(bins, choices);
  LoadVector result;
  result.loads.assign(bins, 0);
  result.balls = balls;
  BinSelector selector(bins, choices);
  for (std::uint64_t i = 0; i < balls; ++i) {
    ++result.loads[selector.select(result.loads, rng)];
  }
  return result;
}

std::uint64_t balls_until_overflow(std::size_t bins, unsigned q, unsigned choices, Rng& rng) {
  check_bins(bins, choices);
  if (q < 2) throw std::invalid_argument("q must be >= 2");
  std::vector<std::uint32_t> loads(bins, 0);
  BinSelector selector(bins, choices);
  const std::uint32_t full = q - 1;
  std::uint64_t placed = 0;
  for (;;) {
    const std::size_t bin = selector.select(loads, rng);
    if (loads[bin] == full) return placed;
    ++loads[bin];
    ++placed;
  }
}

OverflowSummary overflow_experiment(std::size_t bins, unsigned q, unsigned choices,
                                    std::uint64_t trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("need at least one trial");
  std::uint64_t sum = 0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    Rng rng(split_seed(seed, i));
    sum += balls_until_overflow(bins, q, choices, rng);
  }
  OverflowSummary s;
  s.bins = bins;
  s.q = q;
  s.choices = choices;
  s.trials = trials;
  s.mean_balls = static_cast<double>(sum) / static_cast<double>(trials);
  s.eta = 1.0 - s.mean_balls / (static_cast<double>(bins) * (q - 1));
  return s;
}

double collision_bound(double m, double n, double k) {
  if (!(m > 0 && n > 0 && k > 0)) throw std::invalid_argument("m, n, k must be positive");
  const double log_bound = k * (std::log(m) + 1.0 - std::log(n) - std::log(k));
  if (log_bound >= 0) return 1.0;
  return std::exp(log_bound);
}

std::string_view to_string(LoadRegime regime) {
  switch (regime) {
    case LoadRegime::LinearM:
      return "linear";
    case LoadRegime::NLogN:
      return "nlogn";
    case LoadRegime::Polynomial:
      return "polynomial";
    case LoadRegime::TwoChoice:
      return "two-choice";
  }
  return "unknown";
}

RegimePrediction max_load_prediction(double n, double m, unsigned d) {
  if (!(n >= 3)) throw std::invalid_argument("max_load_prediction needs n >= 3");
  if (!(m >= 1)) throw std::invalid_argument("max_load_prediction needs m >= 1");
  if (d < 1) throw std::invalid_argument("need at least one choice");
  const double ln_n = std::log(n);
  if (d >= 2) {
    return {LoadRegime::TwoChoice, m / n + std::log(ln_n) / std::log(static_cast<double>(d))};
  }
  const double c = m / (n * ln_n);
  if (c <= 1.0 / std::numbers::e) {
    return {LoadRegime::LinearM, ln_n / std::log(1.0 / c)};
  }
  const LoadRegime regime = m >= n * n ? LoadRegime::Polynomial : LoadRegime::NLogN;
  return {regime, (solve_dc(c) - 1.0) * ln_n};
}

double solve_dc(double c) {
  if (!(c > 0) || !std::isfinite(c)) throw std::invalid_argument("solve_dc needs c > 0");
  const double ln_c = std::log(c);
  auto g = [&](double x) { return x * (ln_c - std::log(x) + 1.0) + 1.0 - c; };

  // g(c) = 1 and g is strictly decreasing on (c, inf), so the largest root
  // is the only one above c.
  double lo = c;
  double hi = std::max(2.0 * c, c + 1.0);
  while (g(hi) > 0) {
    lo = hi;
    hi *= 2.0;
  }
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > 0 ? lo : hi) = mid;
  }
  double x = 0.5 * (lo + hi);
  for (int i = 0; i < 8; ++i) {
    const double slope = ln_c - std::log(x);
    if (slope == 0) break;
    const double next = x - g(x) / slope;
    if (!(next > c) || next == x) break;
    x = next;
  }
  return x;
}

double lambert_w0(double x) {
  constexpr double kBranch = -1.0 / std::numbers::e;
  if (std::isnan(x) || x < kBranch) throw std::domain_error("lambert_w0 needs x >= -1/e");
  if (x == 0) return 0;
  if (std::isinf(x)) return x;

  double w;
  if (x < -0.25) {
    // Series about the branch point.
    const double p = std::sqrt(std::max(0.0, 2.0 * (std::numbers::e * x + 1.0)));
    w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
  } else if (x < 3.0) {
    const double l = std::log1p(x);
    w = l * (1.0 - std::log1p(l) / (2.0 + l));
  } else {
    const double l1 = std::log(x);
    const double l2 = std::log(l1);
    w = l1 - l2 + l2 / l1;
  }
  if (w <= -1.0) return -1.0;

  for (int i = 0; i < 64; ++i) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    if (wp1 == 0) break;
    const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
    const double next = w - step;
    if (!std::isfinite(next)) break;
    if (std::abs(next - w) <= 4 * std::numeric_limits<double>::epsilon() * std::abs(next)) {
      w = next;
      break;
    }
    w = std::max(next, -1.0);
  }
  return w;
}

}  // namespace flashmod
