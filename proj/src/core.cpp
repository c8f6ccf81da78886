#include "flashmod/core.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <string>

namespace flashmod {

std::string_view to_string(CodeKind kind) {
  switch (kind) {
    case CodeKind::SelfRandomized:
      return "self-randomized";
    case CodeKind::LoadBalancing:
      return "load-balancing";
  }
  return "unknown";
}

std::optional<CodeKind> parse_code_kind(std::string_view name) {
  if (name == "self-randomized" || name == "sr") return CodeKind::SelfRandomized;
  if (name == "load-balancing" || name == "lb") return CodeKind::LoadBalancing;
  return std::nullopt;
}

CodeParams CodeParams::make(CodeKind kind, unsigned k, unsigned q, unsigned l) {
  if (l != 2) {
    throw std::invalid_argument("only binary alphabets (l = 2) are supported, got l = " +
                                std::to_string(l));
  }
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (q < 2 || q > kMaxLevels) {
    throw std::invalid_argument("q must be in [2, 65536], got " + std::to_string(q));
  }
  const unsigned cell_bits = kind == CodeKind::SelfRandomized ? k : k + 1;
  if (cell_bits > kMaxCellBits) {
    throw std::invalid_argument("n = 2^" + std::to_string(cell_bits) + " cells is too large");
  }
  CodeParams p;
  p.k = k;
  p.l = l;
  p.q = q;
  p.n = std::size_t{1} << cell_bits;
  p.kind = kind;
  return p;
}

std::uint64_t CodeParams::alphabet_size() const { return std::uint64_t{1} << k; }

std::uint64_t CodeParams::capacity() const { return static_cast<std::uint64_t>(n) * (q - 1); }

CellState::CellState(std::size_t n, unsigned q) : levels_(n, 0), q_(q) {
  if (q < 2 || q > kMaxLevels) throw std::invalid_argument("q must be in [2, 65536]");
}

CellState::CellState(std::vector<Level> levels, unsigned q) : levels_(std::move(levels)), q_(q) {
  if (q < 2 || q > kMaxLevels) throw std::invalid_argument("q must be in [2, 65536]");
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    if (levels_[i] >= q) {
      throw std::invalid_argument("cell " + std::to_string(i) + " level " +
                                  std::to_string(levels_[i]) + " exceeds q-1");
    }
    total_ += levels_[i];
    weighted_ += static_cast<std::uint64_t>(i) * levels_[i];
  }
}

Level CellState::max_level() const {
  if (levels_.empty()) return 0;
  return *std::max_element(levels_.begin(), levels_.end());
}

void CellState::erase() {
  std::fill(levels_.begin(), levels_.end(), Level{0});
  total_ = 0;
  weighted_ = 0;
}

std::uint64_t l1_norm(const CellState& state) { return state.total(); }

std::uint64_t weighted_sum(const CellState& state, std::uint64_t modulus) {
  assert(modulus >= 1);
  return state.index_weighted() % modulus;
}

WriteOutcome cell_increment(CellState& state, std::size_t idx) {
  assert(idx < state.levels_.size());
  Level& level = state.levels_[idx];
  if (level + 1u >= state.q_) return WriteOutcome::erase_required();
  ++level;
  ++state.total_;
  state.weighted_ += idx;
  return WriteOutcome::written(idx);
}

}  // namespace flashmod
