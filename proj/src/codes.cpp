#include "flashmod/codes.hpp"

#include "flashmod/rng.hpp"

#include <stdexcept>
#include <string>

namespace flashmod {
namespace {

// r(r+1)/2 mod m without forming r^2, since r can reach n(q-1) ~ 2^40.
std::uint64_t triangular_mod(std::uint64_t r, std::uint64_t m) {
  const std::uint64_t even = (r % 2 == 0) ? r / 2 : (r + 1) / 2;
  const std::uint64_t other = (r % 2 == 0) ? r + 1 : r;
  return static_cast<std::uint64_t>(static_cast<uint128>(even % m) * (other % m) % m);
}

constexpr std::uint64_t kInverseTableLimit = std::uint64_t{1} << 16;

}  // namespace

void ModulationCode::check_state(const CellState& state) const {
  if (state.size() != params_.n || state.q() != params_.q) {
    throw std::invalid_argument("cell state shape does not match code parameters");
  }
}

void ModulationCode::check_value(std::uint64_t x) const {
  if (x >= params_.alphabet_size()) {
    throw std::invalid_argument("value " + std::to_string(x) + " outside [0, l^k)");
  }
}

SelfRandomizedCode::SelfRandomizedCode(CodeParams params) : ModulationCode(params) {
  if (params.kind != CodeKind::SelfRandomized) {
    throw std::invalid_argument("SelfRandomizedCode needs SelfRandomized params");
  }
}

std::uint64_t SelfRandomizedCode::decode(const CellState& state) const {
  check_state(state);
  const std::uint64_t m = params().alphabet_size();
  const std::uint64_t s = weighted_sum(state, m);
  const std::uint64_t tri = triangular_mod(l1_norm(state), m);
  return (s + m - tri) % m;
}

std::optional<std::size_t> SelfRandomizedCode::target_cell(const CellState& state,
                                                           std::uint64_t x) const {
  check_value(x);
  const std::uint64_t current = decode(state);
  if (current == x) return std::nullopt;
  const std::uint64_t m = params().alphabet_size();
  const std::uint64_t delta = (x + m - current) % m;
  return static_cast<std::size_t>((delta + l1_norm(state) % m + 1) % m);
}

WriteOutcome SelfRandomizedCode::encode(CellState& state, std::uint64_t x) const {
  const auto cell = target_cell(state, x);
  if (!cell) return WriteOutcome::noop();
  return cell_increment(state, *cell);
}

LoadBalancingCode::LoadBalancingCode(CodeParams params)
    : ModulationCode(params), field_(params.k + 1) {
  if (params.kind != CodeKind::LoadBalancing) {
    throw std::invalid_argument("LoadBalancingCode needs LoadBalancing params");
  }
  const std::uint64_t m = params.alphabet_size();
  if (m <= kInverseTableLimit) {
    // a only takes the values 1..l^k - 1.
    a_inverse_.resize(m);
    for (std::uint64_t a = 1; a < m; ++a) {
      a_inverse_[a] = gf_inv(field_, field_.to_field(a));
    }
  }
}

LbContext LoadBalancingCode::context(std::uint64_t r) const {
  const std::uint64_t m = params().alphabet_size();
  return {field_.to_field(r % (m - 1) + 1), field_.to_field(r % m)};
}

FieldElem LoadBalancingCode::inverse(FieldElem a) const {
  if (a.value < a_inverse_.size() && a.value != 0) return a_inverse_[a.value];
  return gf_inv(field_, a);
}

std::uint64_t LoadBalancingCode::decode(const CellState& state) const {
  check_state(state);
  const std::uint64_t m = params().alphabet_size();
  const std::uint64_t raw = weighted_sum(state, params().n);
  const LbContext ctx = context(l1_norm(state));
  const FieldElem shifted = gf_add(field_, field_.to_field(raw), ctx.b);
  return field_.from_field(gf_mul(field_, inverse(ctx.a), shifted)) % m;
}

std::vector<std::size_t> LoadBalancingCode::candidate_cells(const CellState& state,
                                                            std::uint64_t x) const {
  check_value(x);
  if (decode(state) == x) return {};
  const std::uint64_t m = params().alphabet_size();
  const std::uint64_t n = params().n;
  const std::uint64_t raw = weighted_sum(state, n);
  const LbContext ctx = context(l1_norm(state) + 1);
  std::vector<std::size_t> cells;
  cells.reserve(params().l);
  for (std::uint64_t i = 0; i < params().l; ++i) {
    const FieldElem image =
        gf_add(field_, gf_mul(field_, ctx.a, field_.to_field(x + i * m)), ctx.b);
    cells.push_back(static_cast<std::size_t>((field_.from_field(image) + n - raw) % n));
  }
  return cells;
}

WriteOutcome LoadBalancingCode::encode(CellState& state, std::uint64_t x) const {
  const std::vector<std::size_t> cells = candidate_cells(state, x);
  if (cells.empty()) return WriteOutcome::noop();
  std::size_t best = cells.front();
  for (std::size_t cell : cells) {
    if (state[cell] < state[best]) best = cell;  // ties keep the lowest candidate index
  }
  return cell_increment(state, best);
}

std::unique_ptr<ModulationCode> make_code(const CodeParams& params) {
  switch (params.kind) {
    case CodeKind::SelfRandomized:
      return std::make_unique<SelfRandomizedCode>(params);
    case CodeKind::LoadBalancing:
      return std::make_unique<LoadBalancingCode>(params);
  }
  throw std::invalid_argument("unknown code kind");
}

}  // namespace flashmod
