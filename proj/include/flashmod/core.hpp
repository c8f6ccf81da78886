#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace flashmod {

enum class CodeKind { SelfRandomized, LoadBalancing };

std::string_view to_string(CodeKind kind);
std::optional<CodeKind> parse_code_kind(std::string_view name);

// Static configuration of one n-cell code instance. Only binary alphabets
// (l = 2) are supported; n is derived from (kind, k, l).
struct CodeParams {
  unsigned k = 1;
  unsigned l = 2;
  unsigned q = 2;
  std::size_t n = 2;
  CodeKind kind = CodeKind::SelfRandomized;

  // Validates and fills in n: l^k for SelfRandomized, l^(k+1) for
  // LoadBalancing. Throws std::invalid_argument on bad combinations.
  static CodeParams make(CodeKind kind, unsigned k, unsigned q, unsigned l = 2);

  // l^k, the number of distinct stored values.
  std::uint64_t alphabet_size() const;
  // n(q-1), the number of level increments available between erasures.
  std::uint64_t capacity() const;

  bool operator==(const CodeParams&) const = default;
};

inline constexpr unsigned kMaxLevels = 1u << 16;
inline constexpr unsigned kMaxCellBits = 24;

using Level = std::uint16_t;

class WriteOutcome {
 public:
  enum class Kind { Written, NoOp, EraseRequired };

  static WriteOutcome written(std::size_t cell) { return WriteOutcome(Kind::Written, cell); }
  static WriteOutcome noop() { return WriteOutcome(Kind::NoOp, 0); }
  static WriteOutcome erase_required() { return WriteOutcome(Kind::EraseRequired, 0); }

  Kind kind() const { return kind_; }
  bool is_written() const { return kind_ == Kind::Written; }
  bool is_noop() const { return kind_ == Kind::NoOp; }
  bool is_erase_required() const { return kind_ == Kind::EraseRequired; }
  // Only meaningful for Written.
  std::size_t cell() const { return cell_; }

  bool operator==(const WriteOutcome&) const = default;

 private:
  WriteOutcome(Kind kind, std::size_t cell) : kind_(kind), cell_(cell) {}
  Kind kind_;
  std::size_t cell_;
};

// Charge levels of the n cells of one n-cell. The l1 norm and the
// index-weighted sum are maintained incrementally, so both queries are O(1).
class CellState {
 public:
  CellState(std::size_t n, unsigned q);
  // Throws std::invalid_argument if any level is >= q.
  CellState(std::vector<Level> levels, unsigned q);

  std::size_t size() const { return levels_.size(); }
  unsigned q() const { return q_; }
  std::span<const Level> levels() const { return levels_; }
  Level operator[](std::size_t i) const { return levels_[i]; }

  // Sum of levels.
  std::uint64_t total() const { return total_; }
  // Sum of i * levels[i], unreduced. Bounded by (q-1) n (n-1) / 2 < 2^63.
  std::uint64_t index_weighted() const { return weighted_; }
  Level max_level() const;

  void erase();

  bool operator==(const CellState& other) const {
    return q_ == other.q_ && levels_ == other.levels_;
  }

 private:
  friend WriteOutcome cell_increment(CellState& state, std::size_t idx);

  std::vector<Level> levels_;
  unsigned q_;
  std::uint64_t total_ = 0;
  std::uint64_t weighted_ = 0;
};

std::uint64_t l1_norm(const CellState& state);

// (sum_i i * levels[i]) mod modulus. Requires modulus >= 1.
std::uint64_t weighted_sum(const CellState& state, std::uint64_t modulus);

// Raises cell idx by one level, or reports EraseRequired (state untouched)
// when the cell already sits at q-1. idx must be < state.size().
WriteOutcome cell_increment(CellState& state, std::size_t idx);

}  // namespace flashmod
