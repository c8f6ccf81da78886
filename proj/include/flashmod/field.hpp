#pragma once

#include <compare>
#include <cstdint>

namespace flashmod {

// Element of GF(2^m): polynomial coefficients packed into the low m bits.
struct FieldElem {
  std::uint32_t value = 0;

  constexpr FieldElem() = default;
  constexpr explicit FieldElem(std::uint32_t v) : value(v) {}
  auto operator<=>(const FieldElem&) const = default;
};

inline constexpr unsigned kMinFieldDegree = 2;
inline constexpr unsigned kMaxFieldDegree = 24;

// Low-weight irreducible polynomial of degree m (2 <= m <= 24), bit m set.
std::uint32_t default_irreducible(unsigned m);

// Trial division by every polynomial of degree 1..deg/2.
bool is_irreducible(std::uint32_t poly);

// GF(2^m) defined by a monic irreducible polynomial. Immutable.
class FieldSpec {
 public:
  explicit FieldSpec(unsigned m);
  // Throws std::invalid_argument unless poly has degree exactly m and is
  // irreducible.
  FieldSpec(unsigned m, std::uint32_t poly);

  unsigned degree() const { return m_; }
  std::uint32_t poly() const { return poly_; }
  std::uint32_t order() const { return std::uint32_t{1} << m_; }
  bool contains(FieldElem a) const { return a.value < order(); }

  // The integer <-> field bijection. Identity on m-bit patterns, so
  // to_field(0) is the zero element.
  FieldElem to_field(std::uint64_t x) const;
  std::uint64_t from_field(FieldElem a) const { return a.value; }

 private:
  unsigned m_;
  std::uint32_t poly_;
};

FieldElem gf_add(const FieldSpec& field, FieldElem a, FieldElem b);
FieldElem gf_mul(const FieldSpec& field, FieldElem a, FieldElem b);
FieldElem gf_pow(const FieldSpec& field, FieldElem a, std::uint64_t e);
// a^(2^m - 2). Throws std::domain_error for a = 0.
FieldElem gf_inv(const FieldSpec& field, FieldElem a);

}  // namespace flashmod
