#include "dillon/mpoly.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

namespace dillon {

namespace {

const Field* join(const MPoly& a, const MPoly& b) {
  const Field* fa = a.field();
  const Field* fb = b.field();
  if (fa && fb && fa != fb && !(fa->spec() == fb->spec()))
    throw std::invalid_argument("polynomials over different fields: " + format_field_spec(fa->spec()) + " and " +
                                format_field_spec(fb->spec()));
  return fa ? fa : fb;
}

bool divides(MPoly::Key d, MPoly::Key k) {
  for (int s = 0; s < 32; s += 8)
    if (((d >> s) & 0xFF) > ((k >> s) & 0xFF)) return false;
  return true;
}

}  // namespace

MPoly make_from_terms(const Field* f, std::vector<MPoly::Term> raw) {
  std::sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) { return a.key < b.key; });
  MPoly p;
  p.field_ = f;
  for (const auto& t : raw) {
    if (!p.terms_.empty() && p.terms_.back().key == t.key) p.terms_.back().coef += t.coef;
    else p.terms_.push_back(t);
    if (p.terms_.back().coef.is_zero()) p.terms_.pop_back();
  }
  return p;
}

MPoly::Key MPoly::pack(const Exps& e) {
  for (unsigned v : e)
    if (v > 0xFF) throw std::overflow_error("exponent above 255");
  return (e[0] << 24) | (e[1] << 16) | (e[2] << 8) | e[3];
}

Exps MPoly::unpack(Key k) { return {k >> 24, (k >> 16) & 0xFF, (k >> 8) & 0xFF, k & 0xFF}; }

unsigned MPoly::degree_of(Key k) { return (k >> 24) + ((k >> 16) & 0xFF) + ((k >> 8) & 0xFF) + (k & 0xFF); }

MPoly MPoly::constant(const Field& f, Elem c) { return monomial(f, c, {0, 0, 0, 0}); }

MPoly MPoly::var(const Field& f, Var v) {
  Exps e{};
  e[static_cast<unsigned>(v)] = 1;
  return monomial(f, f.one(), e);
}

MPoly MPoly::monomial(const Field& f, Elem c, const Exps& e) {
  MPoly p(f);
  if (c) p.terms_.push_back({pack(e), c});
  return p;
}

int MPoly::total_degree() const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, static_cast<int>(degree_of(t.key)));
  return d;
}

int MPoly::degree_in(Var v) const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, static_cast<int>(unpack(t.key)[static_cast<unsigned>(v)]));
  return d;
}

Elem MPoly::coefficient(const Exps& e) const {
  const Key k = pack(e);
  const auto it = std::lower_bound(terms_.begin(), terms_.end(), k, [](const Term& t, Key x) { return t.key < x; });
  return it != terms_.end() && it->key == k ? it->coef : Elem{};
}

MPoly::Term MPoly::leading() const {
  if (terms_.empty()) throw std::domain_error("leading term of the zero polynomial");
  return terms_.back();
}

MPoly MPoly::operator+(const MPoly& o) const {
  const Field* f = join(*this, o);
  std::vector<Term> all = terms_;
  all.insert(all.end(), o.terms_.begin(), o.terms_.end());
  return make_from_terms(f, std::move(all));
}

MPoly MPoly::operator*(const MPoly& o) const {
  const Field* f = join(*this, o);
  if (is_zero() || o.is_zero()) return make_from_terms(f, {});
  std::vector<Term> all;
  all.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) {
      const Exps ea = unpack(a.key), eb = unpack(b.key);
      all.push_back({pack({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3]}), f->mul(a.coef, b.coef)});
    }
  return make_from_terms(f, std::move(all));
}

MPoly MPoly::scaled(Elem c) const {
  std::vector<Term> all;
  for (const auto& t : terms_) all.push_back({t.key, field_->mul(t.coef, c)});
  return make_from_terms(field_, std::move(all));
}

MPoly MPoly::pow(unsigned n) const {
  if (!field_) return *this;
  MPoly r = constant(*field_, field_->one()), b = *this;
  for (; n; n >>= 1, b = b * b)
    if (n & 1) r = r * b;
  return r;
}

MPoly MPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(field_->inv(leading().coef));
}

Elem MPoly::eval(const Point& p) const {
  Elem acc;
  for (const auto& t : terms_) {
    const Exps e = unpack(t.key);
    Elem v = t.coef;
    for (int i = 0; i < 4; ++i)
      if (e[i]) v = field_->mul(v, field_->pow(p[i], e[i]));
    acc += v;
  }
  return acc;
}

MPoly MPoly::substitute(Var v, const MPoly& value) const {
  const Field* f = join(*this, value);
  const unsigned vi = static_cast<unsigned>(v);
  std::vector<MPoly> powers{constant(*f, f->one())};
  MPoly r = make_from_terms(f, {});
  for (const auto& t : terms_) {
    Exps e = unpack(t.key);
    const unsigned k = e[vi];
    while (powers.size() <= k) powers.push_back(powers.back() * value);
    e[vi] = 0;
    r += monomial(*f, t.coef, e) * powers[k];
  }
  return r;
}

MPoly MPoly::homogeneous_part(unsigned d) const {
  std::vector<Term> sel;
  for (const auto& t : terms_)
    if (degree_of(t.key) == d) sel.push_back(t);
  return make_from_terms(field_, std::move(sel));
}

MPoly MPoly::lowest_part() const {
  if (is_zero()) return *this;
  unsigned lo = ~0u;
  for (const auto& t : terms_) lo = std::min(lo, degree_of(t.key));
  return homogeneous_part(lo);
}

MPoly MPoly::coefficient_in(Var v, unsigned k) const {
  const unsigned vi = static_cast<unsigned>(v);
  std::vector<Term> sel;
  for (const auto& t : terms_) {
    Exps e = unpack(t.key);
    if (e[vi] != k) continue;
    e[vi] = 0;
    sel.push_back({pack(e), t.coef});
  }
  return make_from_terms(field_, std::move(sel));
}

std::string MPoly::dump() const {
  std::string s;
  char buf[64];
  for (const auto& t : terms_) {
    const Exps e = unpack(t.key);
    std::snprintf(buf, sizeof buf, "%u %u %u %u 0x%x\n", e[0], e[1], e[2], e[3], t.coef.bits);
    s += buf;
  }
  return s;
}

std::string MPoly::to_string(Notation n) const {
  if (is_zero()) return "0";
  static const char* names[] = {"X0", "X1", "Z0", "Z1"};
  std::ostringstream os;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (it != terms_.rbegin()) os << " + ";
    const Exps e = unpack(it->key);
    std::vector<std::string> parts;
    if (it->coef != field_->one() || it->key == 0) parts.push_back(field_->format(it->coef, n));
    for (int i = 0; i < 4; ++i)
      if (e[i]) parts.push_back(std::string(names[i]) + (e[i] > 1 ? "^" + std::to_string(e[i]) : ""));
    for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? "*" : "") << parts[i];
  }
  return os.str();
}

DivResult divrem(const MPoly& p, const MPoly& d) {
  const Field* f = join(p, d);
  if (d.is_zero()) throw std::domain_error("division by the zero polynomial");
  const auto ld = d.leading();
  const Elem inv = f->inv(ld.coef);
  MPoly rest = p, quot = make_from_terms(f, {}), rem = make_from_terms(f, {});
  while (!rest.is_zero()) {
    const auto lt = rest.leading();
    const MPoly head = make_from_terms(f, {lt});
    if (divides(ld.key, lt.key)) {
      const MPoly t = make_from_terms(f, {{lt.key - ld.key, f->mul(lt.coef, inv)}});
      quot += t;
      rest += t * d;
    } else {
      rem += head;
      rest += head;
    }
  }
  return {quot, rem};
}

std::optional<MPoly> exact_div(const MPoly& p, const MPoly& d) {
  auto [q, r] = divrem(p, d);
  if (!r.is_zero()) return std::nullopt;
  return q;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  Parser(const Field& f, const Coeffs& c, std::string_view text) : f_(f), c_(c) {
    for (char ch : text)
      if (!std::isspace(static_cast<unsigned char>(ch)) && ch != '_' && ch != '$' && ch != '*') s_ += ch;
  }

  MPoly run() {
    MPoly p = expr();
    if (i_ != s_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("cannot parse polynomial at offset " + std::to_string(i_) + " (" + why + "): " + s_);
  }
  bool at(char ch) const { return i_ < s_.size() && s_[i_] == ch; }
  bool digit() const { return i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_])); }

  long number() {
    if (!digit()) fail("expected a number");
    long v = 0;
    while (digit()) v = 10 * v + (s_[i_++] - '0');
    return v;
  }

  MPoly expr() {
    MPoly p = term();
    while (at('+') || at('-')) {
      ++i_;
      p += term();
    }
    return p;
  }

  MPoly term() {
    MPoly p = MPoly::constant(f_, f_.one());
    bool any = false;
    while (i_ < s_.size() && !at('+') && !at('-') && !at(')')) {
      p *= factor();
      any = true;
    }
    if (!any) fail("empty term");
    return p;
  }

  MPoly factor() {
    MPoly base;
    if (digit()) {
      base = MPoly::constant(f_, number() % 2 ? f_.one() : Elem{});
    } else if (at('(')) {
      ++i_;
      base = expr();
      if (!at(')')) fail("missing ')'");
      ++i_;
    } else if (at('X') || at('Z')) {
      const char ch = s_[i_++];
      if (!at('0') && !at('1')) fail("variable index must be 0 or 1");
      const unsigned idx = s_[i_++] - '0';
      base = MPoly::var(f_, ch == 'X' ? (idx ? Var::X1 : Var::X0) : (idx ? Var::Z1 : Var::Z0));
    } else if (i_ < s_.size() && s_[i_] >= 'A' && s_[i_] <= 'E') {
      const auto vals = c_.as_array();
      base = MPoly::constant(f_, vals[s_[i_++] - 'A']);
    } else if (at('a')) {
      ++i_;
      base = MPoly::constant(f_, f_.parse("a"));
    } else {
      fail("unknown symbol");
    }
    if (!at('^')) return base;
    ++i_;
    return base.pow(static_cast<unsigned>(exponent()));
  }

  long exponent() {
    const long q = f_.q();
    if (at('q')) return ++i_, q;
    if (!at('{')) return number();
    ++i_;
    long total = 0;
    int sign = 1;
    while (!at('}')) {
      if (i_ >= s_.size()) fail("missing '}'");
      if (at('+') || at('-')) {
        sign = at('-') ? -1 : 1;
        ++i_;
        continue;
      }
      long k = digit() ? number() : 1;
      if (at('q')) {
        ++i_;
        k *= q;
      }
      total += sign * k;
    }
    ++i_;
    if (total < 0) fail("negative exponent");
    return total;
  }

  const Field& f_;
  const Coeffs& c_;
  std::string s_;
  std::size_t i_ = 0;
};

}  // namespace

MPoly parse_mpoly(const Field& f, const Coeffs& c, std::string_view text) { return Parser(f, c, text).run(); }

// ---------------------------------------------------------------------------
// Univariate helpers over GF(q^2), used for the Z1-coefficient ring.

namespace {

using UPoly = std::vector<Elem>;  // low degree first, trimmed

void trim(UPoly& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

UPoly uadd(UPoly a, const UPoly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  trim(a);
  return a;
}

UPoly umul(const Field& f, const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += f.mul(a[i], b[j]);
  trim(r);
  return r;
}

std::pair<UPoly, UPoly> udivrem(const Field& f, UPoly a, const UPoly& b) {
  if (b.empty()) throw std::domain_error("univariate division by zero");
  UPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0);
  const Elem inv = f.inv(b.back());
  while (a.size() >= b.size()) {
    const std::size_t s = a.size() - b.size();
    const Elem k = f.mul(a.back(), inv);
    q[s] = k;
    for (std::size_t j = 0; j < b.size(); ++j) a[s + j] += f.mul(k, b[j]);
    trim(a);
  }
  trim(q);
  return {q, a};
}

UPoly uexact(const Field& f, const UPoly& a, const UPoly& b) {
  auto [q, r] = udivrem(f, a, b);
  if (!r.empty()) throw std::logic_error("inexact division in the coefficient ring");
  return q;
}

UPoly umonic(const Field& f, UPoly a) {
  if (a.empty()) return a;
  const Elem inv = f.inv(a.back());
  for (auto& v : a) v = f.mul(v, inv);
  return a;
}

UPoly ugcd(const Field& f, UPoly a, UPoly b) {
  while (!b.empty()) {
    auto r = udivrem(f, a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return umonic(f, a);
}

// Polynomial in Z0 with coefficients in GF(q^2)[Z1]; index = Z0 degree.
using BPoly = std::vector<UPoly>;

void btrim(BPoly& a) {
  while (!a.empty() && a.back().empty()) a.pop_back();
}

BPoly to_bpoly(const MPoly& p) {
  if (!p.free_of(Var::X0) || !p.free_of(Var::X1)) throw std::invalid_argument("expected a polynomial in Z0, Z1 only");
  BPoly b;
  for (const auto& t : p.terms()) {
    const Exps e = MPoly::unpack(t.key);
    if (b.size() <= e[2]) b.resize(e[2] + 1);
    if (b[e[2]].size() <= e[3]) b[e[2]].resize(e[3] + 1);
    b[e[2]][e[3]] = t.coef;
  }
  btrim(b);
  return b;
}

MPoly from_bpoly(const Field& f, const BPoly& b) {
  std::vector<MPoly::Term> terms;
  for (unsigned i = 0; i < b.size(); ++i)
    for (unsigned j = 0; j < b[i].size(); ++j)
      if (b[i][j]) terms.push_back({MPoly::pack({0, 0, i, j}), b[i][j]});
  return make_from_terms(&f, std::move(terms));
}

UPoly content(const Field& f, const BPoly& a) {
  UPoly g;
  for (const auto& c : a) g = ugcd(f, g, c);
  return g;
}

BPoly primitive(const Field& f, BPoly a) {
  const UPoly c = content(f, a);
  for (auto& v : a) v = v.empty() ? v : uexact(f, v, c);
  return a;
}

BPoly prem(const Field& f, BPoly a, const BPoly& b) {
  const UPoly& lb = b.back();
  while (!a.empty() && a.size() >= b.size()) {
    const std::size_t s = a.size() - b.size();
    const UPoly la = a.back();
    for (auto& v : a) v = umul(f, v, lb);
    for (std::size_t j = 0; j < b.size(); ++j) a[s + j] = uadd(a[s + j], umul(f, la, b[j]));
    btrim(a);
  }
  return a;
}

}  // namespace

MPoly gcd_bivariate(const MPoly& p, const MPoly& r) {
  const Field* f = join(p, r);
  if (p.is_zero()) return r.monic();
  if (r.is_zero()) return p.monic();
  BPoly a = to_bpoly(p), b = to_bpoly(r);
  const UPoly c = ugcd(*f, content(*f, a), content(*f, b));
  a = primitive(*f, a);
  b = primitive(*f, b);
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    if (b.size() == 1) {
      a = {UPoly{f->one()}};
      break;
    }
    BPoly rem = prem(*f, a, b);
    a = std::move(b);
    b = rem.empty() ? rem : primitive(*f, rem);
  }
  for (auto& v : a) v = umul(*f, v, c);
  return from_bpoly(*f, a).monic();
}

MPoly resultant_z0(const MPoly& p, const MPoly& r, unsigned m, unsigned n) {
  const Field* f = join(p, r);
  if (!f) throw std::invalid_argument("resultant of polynomials without a field");
  BPoly a = to_bpoly(p), b = to_bpoly(r);
  if (a.size() > m + 1 || b.size() > n + 1) throw std::invalid_argument("degree in Z0 exceeds the formal degree");
  a.resize(m + 1);
  b.resize(n + 1);
  const std::size_t N = m + n;
  if (N == 0) return MPoly::constant(*f, f->one());
  std::vector<std::vector<UPoly>> M(N, std::vector<UPoly>(N));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= m; ++j) M[i][i + j] = a[m - j];
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j <= n; ++j) M[n + i][i + j] = b[n - j];

  // Fraction-free elimination; row swaps only flip the sign, which is moot here.
  UPoly prev{f->one()};
  for (std::size_t k = 0; k + 1 < N; ++k) {
    if (M[k][k].empty()) {
      std::size_t s = k + 1;
      while (s < N && M[s][k].empty()) ++s;
      if (s == N) return MPoly(*f);
      std::swap(M[k], M[s]);
    }
    for (std::size_t i = k + 1; i < N; ++i) {
      for (std::size_t j = k + 1; j < N; ++j)
        M[i][j] = uexact(*f, uadd(umul(*f, M[i][j], M[k][k]), umul(*f, M[i][k], M[k][j])), prev);
      M[i][k].clear();
    }
    prev = M[k][k];
  }
  std::vector<MPoly::Term> terms;
  const UPoly& d = M[N - 1][N - 1];
  for (unsigned j = 0; j < d.size(); ++j)
    if (d[j]) terms.push_back({MPoly::pack({0, 0, 0, j}), d[j]});
  return make_from_terms(f, std::move(terms));
}

}  // namespace dillon
