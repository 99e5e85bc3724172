#pragma once

// Dillon hexanomials f(x) = x(Ax^2 + Bx^q + Cx^{2q}) + x^2(Dx^q + Ex^{2q}) + x^{3q}.

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dillon/field.hpp"

namespace dillon {

struct Coeffs {
  Elem A, B, C, D, E;

  std::array<Elem, 5> as_array() const { return {A, B, C, D, E}; }
  friend auto operator<=>(const Coeffs&, const Coeffs&) = default;
};

/// Parses "A,B,C,D,E" using Field::parse for each entry.
Coeffs parse_coeffs(const Field& f, std::string_view text);
std::string format_coeffs(const Field& f, const Coeffs& c, Notation n = Notation::Power);

/// Mixed-radix index of a tuple with A most significant; inverse of tuple_at.
std::uint64_t tuple_index(const Field& f, const Coeffs& c);
Coeffs tuple_at(const Field& f, std::uint64_t index);

Elem evaluate(const Field& f, const Coeffs& c, Elem x);

/// f(x) for every x, indexed by x.bits.
std::vector<Elem> truth_table(const Field& f, const Coeffs& c);

struct Term {
  std::uint64_t exponent;
  Elem coef;
  friend bool operator==(const Term&, const Term&) = default;
};

/// Univariate polynomial with distinct exponents and no zero coefficients,
/// kept sorted by ascending exponent.
struct UnivariateForm {
  std::vector<Term> terms;

  Elem eval(const Field& f, Elem x) const;
  friend bool operator==(const UnivariateForm&, const UnivariateForm&) = default;
};

UnivariateForm to_univariate(const Field& f, const Coeffs& c);

/// Groups of coefficient slots (0..4 = A..E, 5 = the leading 1) whose
/// exponents coincide for this q. Empty for every q > 2.
std::vector<std::vector<int>> exponent_collisions(std::uint32_t q);

enum class TermOrder { Ascending, Descending };

struct FormatOptions {
  Notation notation = Notation::Power;
  TermOrder order = TermOrder::Descending;
};

/// Terms rendered as `coef x^e` joined by ` + `; a unit coefficient is omitted
/// and multi-term basis coefficients are parenthesised, e.g. `(a^3 + a + 1) x^9`.
std::string format_univariate(const Field& f, const UnivariateForm& p, const FormatOptions& opts = {});

/// Inverse of format_univariate. Also accepts the appendix spellings:
/// LaTeX braces, `$` delimiters, and coefficients glued to `x`.
UnivariateForm parse_univariate(const Field& f, std::string_view text);

}  // namespace dillon
