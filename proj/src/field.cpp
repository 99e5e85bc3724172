#include "dillon/field.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <sstream>

namespace dillon {

namespace gf2x {

int degree(std::uint64_t p) { return p == 0 ? -1 : 63 - std::countl_zero(p); }

std::uint64_t mod(std::uint64_t a, std::uint64_t m) {
  const int dm = degree(m);
  for (int da = degree(a); da >= dm; da = degree(a)) a ^= m << (da - dm);
  return a;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  const int dm = degree(m);
  a = mod(a, m);
  std::uint64_t r = 0;
  while (b) {
    if (b & 1) r ^= a;
    b >>= 1;
    a <<= 1;
    if ((a >> dm) & 1) a ^= m;
  }
  return r;
}

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
  while (b) {
    a = mod(a, b);
    std::swap(a, b);
  }
  return a;
}

bool is_irreducible(std::uint64_t p) {
  const int n = degree(p);
  if (n <= 0) return false;
  if (n == 1) return true;
  // Rabin: x^{2^n} = x mod p and gcd(x^{2^{n/r}} - x, p) = 1 for primes r | n.
  auto frob_power = [&](int k) {
    std::uint64_t t = 2;
    for (int i = 0; i < k; ++i) t = mulmod(t, t, p);
    return t;
  };
  if (frob_power(n) != mod(2, p)) return false;
  int rest = n;
  for (int r = 2; r <= rest; ++r) {
    if (rest % r) continue;
    while (rest % r == 0) rest /= r;
    if (gcd(frob_power(n / r) ^ mod(2, p), p) != 1) return false;
  }
  return true;
}

std::uint64_t find_factor(std::uint64_t p) {
  const int n = degree(p);
  if (n <= 1) return 0;
  for (int d = 1; d <= n / 2; ++d) {
    for (std::uint64_t f = 1ull << d; f < (2ull << d); ++f)
      if (mod(p, f) == 0) return f;
  }
  return 0;
}

}  // namespace gf2x

namespace {

std::string poly_string(std::uint64_t p) {
  std::ostringstream os;
  bool first = true;
  for (int i = gf2x::degree(p); i >= 0; --i) {
    if (!((p >> i) & 1)) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0) os << "1";
    else if (i == 1) os << "x";
    else os << "x^" << i;
  }
  return first ? "0" : os.str();
}

std::string trim(std::string_view s) {
  std::string out;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch)) && ch != '{' && ch != '}' && ch != '$') out += ch;
  return out;
}

std::uint64_t parse_uint(std::string_view s, int base) {
  if (base == 16 && (s.starts_with("0x") || s.starts_with("0X"))) s.remove_prefix(2);
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v, base);
  if (ec != std::errc{} || p != s.data() + s.size() || s.empty())
    throw std::invalid_argument("not a number: '" + std::string(s) + "'");
  return v;
}

}  // namespace

ReducibleModulus::ReducibleModulus(std::uint64_t modulus, std::uint64_t factor)
    : std::invalid_argument("modulus " + poly_string(modulus) + " is reducible: divisible by " +
                            poly_string(factor)),
      factor_(factor) {}

FieldSpec named_field(std::string_view name) {
  if (name == "F4") return {1, 0x7};
  if (name == "F16") return {2, 0x13};
  if (name == "F64") return {3, 0x5B};
  if (name == "F256") return {4, 0x11D};
  throw std::invalid_argument("unknown field alias '" + std::string(name) + "'");
}

FieldSpec parse_field_spec(std::string_view text) {
  if (!text.starts_with("gf2:")) return named_field(text);
  text.remove_prefix(4);
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw std::invalid_argument("field spec needs gf2:<2m>:<modulus-hex>");
  const auto deg = parse_uint(text.substr(0, colon), 10);
  const auto mod = parse_uint(text.substr(colon + 1), 16);
  if (deg == 0 || deg % 2 != 0 || deg > 32) throw std::invalid_argument("field degree must be even and in [2, 32]");
  if (gf2x::degree(mod) != static_cast<int>(deg)) throw std::invalid_argument("modulus degree does not match field degree");
  return {static_cast<unsigned>(deg / 2), mod};
}

std::string format_field_spec(const FieldSpec& spec) {
  std::ostringstream os;
  os << "gf2:" << spec.degree() << ":0x" << std::hex << std::uppercase << spec.modulus;
  return os.str();
}

Field Field::make(const FieldSpec& spec) {
  const unsigned n = spec.degree();
  if (spec.m == 0 || n > 32) throw std::invalid_argument("field degree must be in [2, 32]");
  if (gf2x::degree(spec.modulus) != static_cast<int>(n) || !(spec.modulus & 1))
    throw std::invalid_argument("modulus must have degree 2m and nonzero constant term");
  if (!gf2x::is_irreducible(spec.modulus)) throw ReducibleModulus(spec.modulus, gf2x::find_factor(spec.modulus));

  Field f;
  f.spec_ = spec;
  f.size_ = static_cast<std::uint32_t>(1ull << n);
  f.x_primitive_ = f.mult_order(f.x()) == f.size_ - 1;
  if (!f.x_primitive_) {
    for (std::uint32_t g = 2; g < f.size_; ++g) {
      if (f.mult_order(Elem{g}) == f.size_ - 1) {
        f.generator_ = Elem{g};
        break;
      }
    }
  }
  if (n <= 16) {
    const std::uint32_t order = f.size_ - 1;
    f.exp_.resize(2 * static_cast<std::size_t>(order));
    f.log_.assign(f.size_, 0);
    Elem p = f.one();
    for (std::uint32_t k = 0; k < order; ++k) {
      f.exp_[k] = f.exp_[k + order] = p.bits;
      f.log_[p.bits] = k;
      p = f.mul_slow(p, f.generator_);
    }
    f.tables_ = true;
    f.frob_.resize(f.size_);
    f.trace_.resize(f.size_);
    for (std::uint32_t z = 0; z < f.size_; ++z) {
      Elem t{z};
      for (unsigned i = 0; i < spec.m; ++i) t = f.mul(t, t);
      f.frob_[z] = t.bits;
      Elem s{z}, acc{};
      for (unsigned i = 0; i < n; ++i) {
        acc += s;
        s = f.mul(s, s);
      }
      f.trace_[z] = static_cast<std::uint8_t>(acc.bits & 1);
    }
  }
  return f;
}

Elem Field::mul_slow(Elem a, Elem b) const {
  return Elem{static_cast<std::uint32_t>(gf2x::mulmod(a.bits, b.bits, spec_.modulus))};
}

Elem Field::mul(Elem a, Elem b) const {
  if (!tables_) return mul_slow(a, b);
  if (a.is_zero() || b.is_zero()) return Elem{};
  return Elem{exp_[log_[a.bits] + log_[b.bits]]};
}

Elem Field::inv(Elem a) const {
  if (a.is_zero()) throw std::domain_error("inverse of zero");
  if (tables_) return Elem{exp_[(size_ - 1 - log_[a.bits]) % (size_ - 1)]};
  return pow(a, size_ - 2);
}

Elem Field::pow(Elem a, std::uint64_t e) const {
  if (e == 0) return one();
  if (a.is_zero()) return Elem{};
  if (tables_) return Elem{exp_[(static_cast<std::uint64_t>(log_[a.bits]) * (e % (size_ - 1))) % (size_ - 1)]};
  Elem r = one();
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Elem Field::frob(Elem z) const {
  if (!frob_.empty()) return Elem{frob_[z.bits]};
  for (unsigned i = 0; i < spec_.m; ++i) z = mul(z, z);
  return z;
}

Elem Field::sqrt(Elem z) const {
  for (unsigned i = 0; i + 1 < degree(); ++i) z = mul(z, z);
  return z;
}

std::pair<Elem, Elem> Field::trace_norm_rel(Elem z) const {
  const Elem zq = frob(z);
  return {z + zq, mul(z, zq)};
}

unsigned Field::abs_trace(Elem z) const {
  if (!trace_.empty()) return trace_[z.bits];
  Elem acc{};
  for (unsigned i = 0; i < degree(); ++i) {
    acc += z;
    z = mul(z, z);
  }
  return acc.bits & 1;
}

std::uint64_t Field::mult_order(Elem z) const {
  if (z.is_zero()) throw std::domain_error("multiplicative order of zero");
  const std::uint64_t group = static_cast<std::uint64_t>(size_) - 1;
  // Strip prime factors of the group order while z^{t/p} = 1.
  std::vector<std::uint64_t> primes;
  std::uint64_t rest = group;
  for (std::uint64_t p = 2; p * p <= rest; ++p) {
    if (rest % p) continue;
    primes.push_back(p);
    while (rest % p == 0) rest /= p;
  }
  if (rest > 1) primes.push_back(rest);

  auto power = [&](std::uint64_t e) {
    Elem r = one(), b = z;
    for (; e; e >>= 1) {
      if (e & 1) r = mul_slow(r, b);
      b = mul_slow(b, b);
    }
    return r;
  };
  std::uint64_t t = group;
  for (const auto p : primes)
    while (t % p == 0 && power(t / p) == one()) t /= p;
  return t;
}

Elem Field::gen_pow(std::uint64_t k) const { return pow(generator_, k); }

std::optional<std::uint32_t> Field::log(Elem z) const {
  if (z.is_zero()) return std::nullopt;
  if (tables_) return log_[z.bits];
  Elem p = one();
  for (std::uint32_t k = 0; k + 1 < size_; ++k) {
    if (p == z) return k;
    p = mul(p, generator_);
  }
  return std::nullopt;
}

std::string Field::format(Elem z, Notation n) const {
  std::ostringstream os;
  switch (n) {
    case Notation::Hex:
      os << "0x" << std::hex << std::uppercase << z.bits;
      return os.str();
    case Notation::Power: {
      if (z.is_zero()) return "0";
      const auto k = *log(z);
      if (k == 0) return "1";
      if (k == 1) return "a";
      os << "a^" << k;
      return os.str();
    }
    case Notation::Basis: {
      if (z.is_zero()) return "0";
      bool first = true;
      for (int i = static_cast<int>(degree()) - 1; i >= 0; --i) {
        if (!((z.bits >> i) & 1)) continue;
        if (!first) os << " + ";
        first = false;
        if (i == 0) os << "1";
        else if (i == 1) os << "a";
        else os << "a^" << i;
      }
      return os.str();
    }
  }
  return {};
}

Elem Field::parse(std::string_view text) const {
  std::string s = trim(text);
  while (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  if (s.empty()) throw std::invalid_argument("empty field element");
  if (s.starts_with("0x") || s.starts_with("0X")) {
    const auto v = parse_uint(s, 16);
    if (v >= size_) throw std::invalid_argument("element " + s + " out of range");
    return Elem{static_cast<std::uint32_t>(v)};
  }
  std::vector<std::string> terms;
  for (std::size_t start = 0;;) {
    const auto plus = s.find('+', start);
    terms.push_back(s.substr(start, plus - start));
    if (plus == std::string::npos) break;
    start = plus + 1;
  }
  // A lone a^k is power notation in the verified generator; sums are
  // basis coordinates in the class of x.
  const bool single = terms.size() == 1;
  Elem acc{};
  for (const auto& t : terms) {
    if (t.empty()) throw std::invalid_argument("malformed element '" + std::string(text) + "'");
    if (t[0] == 'a') {
      std::uint64_t k = 1;
      if (t.size() > 1) {
        if (t[1] != '^') throw std::invalid_argument("malformed term '" + t + "'");
        k = parse_uint(std::string_view(t).substr(2), 10);
      }
      acc += single ? gen_pow(k) : pow(x(), k);
    } else {
      const auto v = parse_uint(t, 16);
      if (v >= size_) throw std::invalid_argument("element " + t + " out of range");
      acc += Elem{static_cast<std::uint32_t>(v)};
    }
  }
  return acc;
}

}  // namespace dillon
