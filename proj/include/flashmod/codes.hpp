#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "flashmod/core.hpp"
#include "flashmod/field.hpp"

namespace flashmod {

// Common contract of a modulation code: a decoder that sees only the cell
// state, and an encoder that raises at most one cell level per write.
class ModulationCode {
 public:
  virtual ~ModulationCode() = default;

  const CodeParams& params() const { return params_; }
  CellState fresh_state() const { return CellState(params_.n, params_.q); }

  // Value in [0, l^k) currently stored by `state`.
  virtual std::uint64_t decode(const CellState& state) const = 0;

  // Stores x (< l^k). Returns NoOp when state already decodes to x,
  // Written(cell) after a single one-level increment, or EraseRequired
  // (state untouched) when the chosen cell is already at q-1.
  virtual WriteOutcome encode(CellState& state, std::uint64_t x) const = 0;

 protected:
  explicit ModulationCode(CodeParams params) : params_(params) {}
  void check_state(const CellState& state) const;
  void check_value(std::uint64_t x) const;

 private:
  CodeParams params_;
};

// n = l^k cells. The running write count r (the l1 norm) rotates the target
// cell so that any input law produces uniformly spread increments:
//   decode:  x = (sum_i i*s(i) - r(r+1)/2) mod l^k
//   encode:  w = (x - decode + r + 1) mod l^k
class SelfRandomizedCode final : public ModulationCode {
 public:
  explicit SelfRandomizedCode(CodeParams params);

  std::uint64_t decode(const CellState& state) const override;
  WriteOutcome encode(CellState& state, std::uint64_t x) const override;

  // Cell that encode() would touch for x, or nullopt for a NoOp.
  std::optional<std::size_t> target_cell(const CellState& state, std::uint64_t x) const;
};

// Per-write affine scalars of the load-balancing code. a is never zero.
struct LbContext {
  FieldElem a;
  FieldElem b;
};

// n = l^(k+1) cells over GF(l^(k+1)). Each value x has l representatives
// x + i*l^k; an affine map keyed on r scatters them over the cells and the
// encoder charges the least-loaded candidate.
class LoadBalancingCode final : public ModulationCode {
 public:
  explicit LoadBalancingCode(CodeParams params);

  const FieldSpec& field() const { return field_; }

  // a = h((r mod (l^k - 1)) + 1), b = h(r mod l^k).
  LbContext context(std::uint64_t r) const;

  std::uint64_t decode(const CellState& state) const override;
  WriteOutcome encode(CellState& state, std::uint64_t x) const override;

  // The l candidate cells for storing x on top of `state`, in candidate
  // order i = 0..l-1. Empty for a NoOp.
  std::vector<std::size_t> candidate_cells(const CellState& state, std::uint64_t x) const;

 private:
  FieldElem inverse(FieldElem a) const;

  FieldSpec field_;
  std::vector<FieldElem> a_inverse_;  // indexed by a.value, when small enough
};

std::unique_ptr<ModulationCode> make_code(const CodeParams& params);

}  // namespace flashmod
