#pragma once

// Arithmetic in GF(2^{2m}) = GF(q^2), q = 2^m, in polynomial basis.

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dillon {

/// A field element in polynomial-basis coordinates: bit i is the coefficient
/// of x^i.
struct Elem {
  std::uint32_t bits = 0;

  constexpr Elem() = default;
  constexpr explicit Elem(std::uint32_t b) : bits(b) {}

  constexpr bool is_zero() const { return bits == 0; }
  constexpr explicit operator bool() const { return bits != 0; }
  friend constexpr auto operator<=>(Elem, Elem) = default;
};

constexpr Elem operator+(Elem a, Elem b) { return Elem{a.bits ^ b.bits}; }
constexpr Elem& operator+=(Elem& a, Elem b) { a.bits ^= b.bits; return a; }

struct FieldSpec {
  unsigned m = 1;              // q = 2^m; the field has 2^{2m} elements
  std::uint64_t modulus = 0x7; // degree-2m polynomial over GF(2), bit i = x^i

  unsigned degree() const { return 2 * m; }
  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

/// Thrown by Field::make when the modulus is not irreducible.
class ReducibleModulus : public std::invalid_argument {
 public:
  ReducibleModulus(std::uint64_t modulus, std::uint64_t factor);
  std::uint64_t factor() const { return factor_; }

 private:
  std::uint64_t factor_;
};

/// Named field specs for the four appendix constructions.
FieldSpec named_field(std::string_view name);  // "F4", "F16", "F64", "F256"

/// Parses `gf2:<2m>:<hex>` or one of the named aliases.
FieldSpec parse_field_spec(std::string_view text);
std::string format_field_spec(const FieldSpec& spec);

/// Coefficient notation used when printing elements.
enum class Notation { Power, Basis, Hex };

/// Immutable field context. Safe to share across threads once built.
class Field {
 public:
  static Field make(const FieldSpec& spec);

  const FieldSpec& spec() const { return spec_; }
  unsigned m() const { return spec_.m; }
  unsigned degree() const { return spec_.degree(); }
  std::uint32_t size() const { return size_; }
  std::uint32_t q() const { return 1u << spec_.m; }

  Elem zero() const { return Elem{0}; }
  Elem one() const { return Elem{1}; }
  /// Class of x in GF(2)[x]/(modulus).
  Elem x() const { return Elem{2}; }
  /// Verified generator of the multiplicative group (x itself when primitive).
  Elem generator() const { return generator_; }
  bool x_is_primitive() const { return x_primitive_; }

  bool contains(Elem a) const { return a.bits < size_; }
  Elem element(std::uint32_t index) const { return Elem{index}; }

  Elem mul(Elem a, Elem b) const;
  Elem sqr(Elem a) const { return mul(a, a); }
  Elem inv(Elem a) const;  // throws std::domain_error on zero
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;
  /// Relative Frobenius z -> z^q.
  Elem frob(Elem z) const;
  /// Square root in characteristic 2: z^{2^{2m-1}}.
  Elem sqrt(Elem z) const;
  /// (z + z^q, z^{q+1}); both lie in GF(q).
  std::pair<Elem, Elem> trace_norm_rel(Elem z) const;
  /// Absolute trace to GF(2).
  unsigned abs_trace(Elem z) const;
  std::uint64_t mult_order(Elem z) const;  // throws std::domain_error on zero
  bool in_subfield(Elem z) const { return frob(z) == z; }

  /// g^k for the verified generator g.
  Elem gen_pow(std::uint64_t k) const;
  /// Discrete log to the verified generator; nullopt for zero.
  std::optional<std::uint32_t> log(Elem z) const;

  std::string format(Elem z, Notation n = Notation::Power) const;
  /// Accepts `0`, `1`, `a`, `a^k`, basis sums such as `a^3 + a + 1`
  /// (optionally parenthesised, LaTeX braces allowed), or hex `0x..`.
  Elem parse(std::string_view text) const;

 private:
  Field() = default;
  Elem mul_slow(Elem a, Elem b) const;

  FieldSpec spec_;
  std::uint32_t size_ = 0;
  bool tables_ = false;
  bool x_primitive_ = false;
  Elem generator_{2};
  std::vector<std::uint32_t> exp_;  // length 2*(size-1), generator powers
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> frob_;
  std::vector<std::uint8_t> trace_;
};

// Polynomials over GF(2) packed into machine words; exposed for tests.
namespace gf2x {
int degree(std::uint64_t p);
std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t mod);
std::uint64_t mod(std::uint64_t a, std::uint64_t m);
std::uint64_t gcd(std::uint64_t a, std::uint64_t b);
/// A nontrivial factor of p, or 0 if p is irreducible.
std::uint64_t find_factor(std::uint64_t p);
bool is_irreducible(std::uint64_t p);
}  // namespace gf2x

}  // namespace dillon
