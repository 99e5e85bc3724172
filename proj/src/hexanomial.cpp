#include "dillon/hexanomial.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>

namespace dillon {

namespace {

std::array<std::uint64_t, 6> exponents(std::uint64_t q) {
  return {3, q + 1, 2 * q + 1, q + 2, 2 * q + 2, 3 * q};
}

}  // namespace

Coeffs parse_coeffs(const Field& f, std::string_view text) {
  std::array<Elem, 5> v{};
  std::size_t start = 0;
  for (int i = 0; i < 5; ++i) {
    const auto comma = text.find(',', start);
    if ((i < 4) == (comma == std::string_view::npos))
      throw std::invalid_argument("tuple must have exactly five comma-separated entries");
    v[i] = f.parse(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    start = comma + 1;
  }
  return {v[0], v[1], v[2], v[3], v[4]};
}

std::string format_coeffs(const Field& f, const Coeffs& c, Notation n) {
  std::string out;
  for (const auto e : c.as_array()) {
    if (!out.empty()) out += ',';
    out += f.format(e, n);
  }
  return out;
}

std::uint64_t tuple_index(const Field& f, const Coeffs& c) {
  std::uint64_t idx = 0;
  for (const auto e : c.as_array()) idx = idx * f.size() + e.bits;
  return idx;
}

Coeffs tuple_at(const Field& f, std::uint64_t index) {
  std::array<Elem, 5> v{};
  for (int i = 4; i >= 0; --i) {
    v[i] = Elem{static_cast<std::uint32_t>(index % f.size())};
    index /= f.size();
  }
  return {v[0], v[1], v[2], v[3], v[4]};
}

Elem evaluate(const Field& f, const Coeffs& c, Elem x) {
  const Elem xq = f.frob(x);
  const Elem x2 = f.sqr(x);
  const Elem x2q = f.sqr(xq);
  const Elem left = f.mul(x, f.mul(c.A, x2) + f.mul(c.B, xq) + f.mul(c.C, x2q));
  const Elem right = f.mul(x2, f.mul(c.D, xq) + f.mul(c.E, x2q));
  return left + right + f.mul(x2q, xq);
}

std::vector<Elem> truth_table(const Field& f, const Coeffs& c) {
  std::vector<Elem> lut(f.size());
  for (std::uint32_t x = 0; x < f.size(); ++x) lut[x] = evaluate(f, c, Elem{x});
  return lut;
}

Elem UnivariateForm::eval(const Field& f, Elem x) const {
  Elem acc{};
  for (const auto& t : terms) acc += f.mul(t.coef, f.pow(x, t.exponent));
  return acc;
}

UnivariateForm to_univariate(const Field& f, const Coeffs& c) {
  const auto e = exponents(f.q());
  const std::array<Elem, 6> k = {c.A, c.B, c.C, c.D, c.E, f.one()};
  std::map<std::uint64_t, Elem> merged;
  for (int i = 0; i < 6; ++i) merged[e[i]] += k[i];
  UnivariateForm out;
  for (const auto& [exp, coef] : merged)
    if (!coef.is_zero()) out.terms.push_back({exp, coef});
  return out;
}

std::vector<std::vector<int>> exponent_collisions(std::uint32_t q) {
  const auto e = exponents(q);
  std::map<std::uint64_t, std::vector<int>> groups;
  for (int i = 0; i < 6; ++i) groups[e[i]].push_back(i);
  std::vector<std::vector<int>> out;
  for (auto& [exp, slots] : groups)
    if (slots.size() > 1) out.push_back(std::move(slots));
  return out;
}

std::string format_univariate(const Field& f, const UnivariateForm& p, const FormatOptions& opts) {
  if (p.terms.empty()) return "0";
  std::vector<Term> terms = p.terms;
  if (opts.order == TermOrder::Descending) std::reverse(terms.begin(), terms.end());
  std::ostringstream os;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) os << " + ";
    const auto& t = terms[i];
    const bool unit = t.coef == f.one();
    if (!unit || t.exponent == 0) {
      std::string coef = f.format(t.coef, opts.notation);
      if (coef.find('+') != std::string::npos) coef = "(" + coef + ")";
      os << coef;
      if (t.exponent != 0) os << ' ';
    }
    if (t.exponent == 1) os << 'x';
    else if (t.exponent > 1) os << "x^" << t.exponent;
  }
  return os.str();
}

UnivariateForm parse_univariate(const Field& f, std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch)) && ch != '{' && ch != '}' && ch != '$') s += ch;
  if (s.empty()) throw std::invalid_argument("empty polynomial");

  std::vector<std::string> pieces;
  int depth = 0;
  std::string cur;
  for (char ch : s) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (depth < 0) throw std::invalid_argument("unbalanced parentheses");
    if (ch == '+' && depth == 0) {
      pieces.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (depth != 0) throw std::invalid_argument("unbalanced parentheses");
  pieces.push_back(cur);

  std::map<std::uint64_t, Elem> merged;
  for (const auto& piece : pieces) {
    if (piece.empty()) throw std::invalid_argument("empty term in '" + std::string(text) + "'");
    const auto xpos = piece.find('x');
    std::uint64_t exp = 0;
    std::string coef = piece;
    if (xpos != std::string::npos) {
      coef = piece.substr(0, xpos);
      const std::string tail = piece.substr(xpos + 1);
      if (tail.empty()) exp = 1;
      else if (tail[0] == '^' && tail.size() > 1) exp = std::stoull(tail.substr(1));
      else throw std::invalid_argument("malformed monomial '" + piece + "'");
    }
    merged[exp] += coef.empty() ? f.one() : f.parse(coef);
  }
  UnivariateForm out;
  for (const auto& [exp, c] : merged)
    if (!c.is_zero()) out.terms.push_back({exp, c});
  return out;
}

}  // namespace dillon
