#pragma once

// Sparse polynomials over GF(q^2) in X0, X1, Z0, Z1.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dillon/hexanomial.hpp"

namespace dillon {

enum class Var : unsigned { X0 = 0, X1 = 1, Z0 = 2, Z1 = 3 };
using Exps = std::array<unsigned, 4>;  // (eX0, eX1, eZ0, eZ1)
using Point = std::array<Elem, 4>;     // (X0, X1, Z0, Z1)

/// Terms are kept sorted by a packed key eX0<<24 | eX1<<16 | eZ0<<8 | eZ1, so
/// numeric key order is lexicographic order with X0 > X1 > Z0 > Z1. Zero
/// coefficients are never stored. A polynomial remembers the field it was
/// built over; the field must outlive it.
class MPoly {
 public:
  using Key = std::uint32_t;
  struct Term {
    Key key;
    Elem coef;
    friend bool operator==(const Term&, const Term&) = default;
  };

  MPoly() = default;
  explicit MPoly(const Field& f) : field_(&f) {}

  static MPoly constant(const Field& f, Elem c);
  static MPoly var(const Field& f, Var v);
  static MPoly monomial(const Field& f, Elem c, const Exps& e);

  static Key pack(const Exps& e);
  static Exps unpack(Key k);
  static unsigned degree_of(Key k);

  const Field* field() const { return field_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  /// -1 for the zero polynomial.
  int total_degree() const;
  int degree_in(Var v) const;
  bool free_of(Var v) const { return degree_in(v) <= 0; }
  Elem coefficient(const Exps& e) const;
  /// Lex-largest term; throws on zero.
  Term leading() const;

  MPoly operator+(const MPoly& o) const;
  MPoly& operator+=(const MPoly& o) { return *this = *this + o; }
  MPoly operator*(const MPoly& o) const;
  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }
  MPoly scaled(Elem c) const;
  MPoly pow(unsigned n) const;
  /// Divides by the leading coefficient.
  MPoly monic() const;

  Elem eval(const Point& p) const;
  MPoly substitute(Var v, const MPoly& value) const;
  MPoly homogeneous_part(unsigned d) const;
  /// Lowest non-vanishing homogeneous part; zero for zero.
  MPoly lowest_part() const;
  /// Coefficient of v^k, as a polynomial free of v.
  MPoly coefficient_in(Var v, unsigned k) const;

  /// One term per line, `eX0 eX1 eZ0 eZ1 0x<coef>`, ascending key order.
  std::string dump() const;
  std::string to_string(Notation n = Notation::Power) const;

  friend bool operator==(const MPoly& a, const MPoly& b) { return a.terms_ == b.terms_; }

 private:
  friend MPoly make_from_terms(const Field* f, std::vector<Term> raw);
  const Field* field_ = nullptr;
  std::vector<Term> terms_;
};

/// Lexicographic division with remainder by a single divisor. The remainder
/// is zero exactly when d divides p.
struct DivResult {
  MPoly quotient, remainder;
};
DivResult divrem(const MPoly& p, const MPoly& d);
std::optional<MPoly> exact_div(const MPoly& p, const MPoly& d);

/// Parses a sum of products, e.g. `Z0^2Z1(A^{q+1} + C^{q+1} + 1) + X0^2 E^q`.
/// Factors are X0, X1, Z0, Z1, the coefficient symbols A..E (bound to `c`),
/// the field symbol a, integers (reduced mod 2) and parenthesised sums.
/// Exponents are integers or braced linear forms in q such as {2q+1}.
/// Whitespace is ignored.
MPoly parse_mpoly(const Field& f, const Coeffs& c, std::string_view text);

/// GCD of two polynomials in Z0, Z1 only, normalized so its lex-leading term
/// (Z0 > Z1) has coefficient 1. gcd(0, r) is r normalized.
MPoly gcd_bivariate(const MPoly& p, const MPoly& r);

/// Resultant in Z0 of two polynomials in Z0, Z1 with the given formal
/// Z0-degrees, as a polynomial in Z1. Throws if a degree exceeds the formal one.
MPoly resultant_z0(const MPoly& p, const MPoly& r, unsigned deg_p, unsigned deg_r);

}  // namespace dillon
