#include "flashmod/field.hpp"

#include <array>
#include <bit>
#include <stdexcept>
#include <string>

namespace flashmod {
namespace {

constexpr std::array<std::uint32_t, kMaxFieldDegree + 1> kDefaultPolys = {
    0,          0,
    0x7,        // x^2 + x + 1
    0xB,        // x^3 + x + 1
    0x13,       // x^4 + x + 1
    0x25,       // x^5 + x^2 + 1
    0x43,       // x^6 + x + 1
    0x83,       // x^7 + x + 1
    0x11D,      // x^8 + x^4 + x^3 + x^2 + 1
    0x211,      // x^9 + x^4 + 1
    0x409,      // x^10 + x^3 + 1
    0x805,      // x^11 + x^2 + 1
    0x1053,     // x^12 + x^6 + x^4 + x + 1
    0x201B,     // x^13 + x^4 + x^3 + x + 1
    0x4443,     // x^14 + x^10 + x^6 + x + 1
    0x8003,     // x^15 + x + 1
    0x1100B,    // x^16 + x^12 + x^3 + x + 1
    0x20009,    // x^17 + x^3 + 1
    0x40081,    // x^18 + x^7 + 1
    0x80027,    // x^19 + x^5 + x^2 + x + 1
    0x100009,   // x^20 + x^3 + 1
    0x200005,   // x^21 + x^2 + 1
    0x400003,   // x^22 + x + 1
    0x800021,   // x^23 + x^5 + 1
    0x1000087,  // x^24 + x^7 + x^2 + x + 1
};

int poly_degree(std::uint64_t p) { return p == 0 ? -1 : 63 - std::countl_zero(p); }

std::uint64_t poly_mod(std::uint64_t a, std::uint64_t b) {
  const int db = poly_degree(b);
  for (int da = poly_degree(a); da >= db; da = poly_degree(a)) a ^= b << (da - db);
  return a;
}

void check_degree(unsigned m) {
  if (m < kMinFieldDegree || m > kMaxFieldDegree) {
    throw std::invalid_argument("field degree must be in [2, 24], got " + std::to_string(m));
  }
}

}  // namespace

std::uint32_t default_irreducible(unsigned m) {
  check_degree(m);
  return kDefaultPolys[m];
}

bool is_irreducible(std::uint32_t poly) {
  const int deg = poly_degree(poly);
  if (deg < 1) return false;
  for (int d = 1; d <= deg / 2; ++d) {
    for (std::uint64_t divisor = 1ULL << d; divisor < (2ULL << d); ++divisor) {
      if (poly_mod(poly, divisor) == 0) return false;
    }
  }
  return true;
}

FieldSpec::FieldSpec(unsigned m) : FieldSpec(m, default_irreducible(m)) {}

FieldSpec::FieldSpec(unsigned m, std::uint32_t poly) : m_(m), poly_(poly) {
  check_degree(m);
  if (poly_degree(poly) != static_cast<int>(m)) {
    throw std::invalid_argument("polynomial degree does not match m = " + std::to_string(m));
  }
  if (!is_irreducible(poly)) {
    throw std::invalid_argument("polynomial " + std::to_string(poly) + " is reducible");
  }
}

FieldElem FieldSpec::to_field(std::uint64_t x) const {
  if (x >= order()) throw std::out_of_range("integer outside the field");
  return FieldElem(static_cast<std::uint32_t>(x));
}

FieldElem gf_add(const FieldSpec&, FieldElem a, FieldElem b) { return FieldElem(a.value ^ b.value); }

FieldElem gf_mul(const FieldSpec& field, FieldElem a, FieldElem b) {
  const std::uint32_t top = field.order();
  const std::uint32_t poly = field.poly();
  std::uint32_t x = a.value;
  std::uint32_t y = b.value;
  std::uint32_t acc = 0;
  while (y != 0) {
    if (y & 1u) acc ^= x;
    y >>= 1;
    x <<= 1;
    if (x & top) x ^= poly;
  }
  return FieldElem(acc);
}

FieldElem gf_pow(const FieldSpec& field, FieldElem a, std::uint64_t e) {
  FieldElem result(1);
  while (e != 0) {
    if (e & 1u) result = gf_mul(field, result, a);
    a = gf_mul(field, a, a);
    e >>= 1;
  }
  return result;
}

FieldElem gf_inv(const FieldSpec& field, FieldElem a) {
  if (a.value == 0) throw std::domain_error("zero has no multiplicative inverse");
  return gf_pow(field, a, field.order() - 2);
}

}  // namespace flashmod
