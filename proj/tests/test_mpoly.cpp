#include "doctest.h"

#include <random>

#include "dillon/mpoly.hpp"
#include "oracles.hpp"

using namespace dillon;

namespace {

MPoly random_poly(const Field& f, std::mt19937_64& rng, unsigned terms, unsigned maxdeg, bool bivariate) {
  MPoly p(f);
  for (unsigned t = 0; t < terms; ++t) {
    Exps e{};
    for (int i = bivariate ? 2 : 0; i < 4; ++i) e[i] = rng() % (maxdeg + 1);
    p += MPoly::monomial(f, Elem{static_cast<std::uint32_t>(rng() % f.size())}, e);
  }
  return p;
}

/// Determinant by plain Gaussian elimination with oracle arithmetic.
std::uint32_t det(const oracle::GF& g, std::vector<std::vector<std::uint32_t>> m) {
  const std::size_t n = m.size();
  std::uint32_t d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && !m[p][c]) ++p;
    if (p == n) return 0;
    std::swap(m[p], m[c]);
    d = g.mul(d, m[c][c]);
    const auto inv = g.inv(m[c][c]);
    for (std::size_t i = c + 1; i < n; ++i) {
      const auto k = g.mul(m[i][c], inv);
      for (std::size_t j = c; j < n; ++j) m[i][j] ^= g.mul(k, m[c][j]);
    }
  }
  return d;
}

/// Coefficients of Z0^i after fixing Z1 = z, via the oracle evaluator on the term list.
std::vector<std::uint32_t> specialize(const oracle::GF& g, const MPoly& p, std::uint32_t z, unsigned deg) {
  std::vector<std::uint32_t> c(deg + 1, 0);
  for (const auto& t : p.terms()) {
    const auto e = MPoly::unpack(t.key);
    c[e[2]] ^= g.mul(t.coef.bits, g.pow(z, e[3]));
  }
  return c;
}

}  // namespace

TEST_CASE("basic arithmetic") {
  const auto f = Field::make(named_field("F16"));
  const auto z0 = MPoly::var(f, Var::Z0), z1 = MPoly::var(f, Var::Z1);
  CHECK((z0 + z1) * (z0 + z1) == z0 * z0 + z1 * z1);
  CHECK((z0.pow(3) + z0 * z1).lowest_part() == z0 * z1);
  CHECK((z0 + z0).is_zero());
  CHECK(MPoly(f).lowest_part().is_zero());
  CHECK(MPoly(f).total_degree() == -1);
  CHECK((z0.pow(3) * z1).total_degree() == 4);
  CHECK((z0.pow(3) * z1).degree_in(Var::Z0) == 3);
  CHECK(z0.degree_in(Var::X1) == 0);
  CHECK(MPoly::unpack(MPoly::pack({1, 2, 3, 4})) == Exps{1, 2, 3, 4});
  CHECK_THROWS_AS(MPoly::pack({256, 0, 0, 0}), std::overflow_error);
  CHECK_THROWS_AS(MPoly(f).leading(), std::domain_error);

  const auto p = parse_mpoly(f, {}, "X0^2 Z1 + a Z0 + 1");
  CHECK(p.dump() == "0 0 0 0 0x1\n0 0 1 0 0x2\n2 0 0 1 0x1\n");
  CHECK(p.to_string() == "X0^2*Z1 + a*Z0 + 1");
  CHECK(p.leading().key == MPoly::pack({2, 0, 0, 1}));
  CHECK(p.coefficient({0, 0, 1, 0}) == f.x());
  CHECK(p.coefficient_in(Var::X0, 2) == z1);
}

TEST_CASE("mixed fields are rejected") {
  const auto f4 = Field::make(named_field("F4"));
  const auto f16 = Field::make(named_field("F16"));
  const auto a = MPoly::var(f4, Var::Z0), b = MPoly::var(f16, Var::Z0);
  CHECK_THROWS_AS(a + b, std::invalid_argument);
  CHECK_THROWS_AS(a * b, std::invalid_argument);
  const auto f4b = Field::make(named_field("F4"));
  CHECK_NOTHROW(a + MPoly::var(f4b, Var::Z1));
}

TEST_CASE("parser") {
  const auto f = Field::make(named_field("F16"));
  const Coeffs c = parse_coeffs(f, "a,a^2,a^3,a^4,a^5");
  CHECK(parse_mpoly(f, c, "A^{q+1}") == MPoly::constant(f, f.pow(c.A, f.q() + 1)));
  CHECK(parse_mpoly(f, c, "A^qB") == MPoly::constant(f, f.mul(f.frob(c.A), c.B)));
  CHECK(parse_mpoly(f, c, "Z_0^{2}Z_1(C + 1)") == parse_mpoly(f, c, "Z0^2 Z1 C + Z0^2Z1"));
  CHECK(parse_mpoly(f, c, "2Z0 + 3Z1").to_string() == "Z1");
  CHECK(parse_mpoly(f, c, "E^{2q-1}") == MPoly::constant(f, f.pow(c.E, 2 * f.q() - 1)));
  CHECK_THROWS_AS(parse_mpoly(f, c, "Y0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_mpoly(f, c, "(Z0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_mpoly(f, c, "Z2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_mpoly(f, c, "A^{1-q}"), std::invalid_argument);
}

TEST_CASE("evaluation matches a naive evaluator") {
  const auto f = Field::make(named_field("F64"));
  const auto g = oracle::F64();
  const char* F1 =
      "AZ0X0^2 + Z1^2EX0^2 + Z1DX0^2 + Z0^2AX0 + Z1^2CX0 + Z1BX0 + Z0^2EX1^2 + Z0CX1^2 + Z1X1^2 + Z0^2DX1 + Z0BX1 + "
      "Z1^2X1";
  std::mt19937_64 rng(31);
  for (int t = 0; t < 200; ++t) {
    const Coeffs c = tuple_at(f, rng() % (std::uint64_t{1} << 30));
    const auto p = parse_mpoly(f, c, F1);
    Point pt;
    for (auto& v : pt) v = Elem{static_cast<std::uint32_t>(rng() % 64)};
    const std::map<std::string, std::uint32_t> vals{{"A", c.A.bits},  {"B", c.B.bits},   {"C", c.C.bits},
                                                    {"D", c.D.bits},  {"E", c.E.bits},   {"X0", pt[0].bits},
                                                    {"X1", pt[1].bits}, {"Z0", pt[2].bits}, {"Z1", pt[3].bits}};
    REQUIRE(p.eval(pt).bits == oracle::poly_eval(g, F1, vals));
  }
}

TEST_CASE("homogeneous parts, substitution and division") {
  const auto f = Field::make(named_field("F16"));
  std::mt19937_64 rng(32);
  for (int t = 0; t < 100; ++t) {
    const auto p = random_poly(f, rng, 12, 3, false);
    MPoly sum(f);
    for (int d = 0; d <= std::max(0, p.total_degree()); ++d) sum += p.homogeneous_part(d);
    REQUIRE(sum == p);

    const auto v = random_poly(f, rng, 3, 2, true);
    const auto s = p.substitute(Var::X1, v);
    REQUIRE(s.free_of(Var::X1));
    Point pt;
    for (auto& e : pt) e = Elem{static_cast<std::uint32_t>(rng() % 16)};
    Point pv = pt;
    pv[1] = v.eval(pt);
    REQUIRE(s.eval(pt) == p.eval(pv));

    const auto d = random_poly(f, rng, 4, 2, false);
    if (d.is_zero()) continue;
    const auto [q, r] = divrem(p, d);
    REQUIRE(q * d + r == p);
    const auto back = exact_div(p * d, d);
    REQUIRE(back.has_value());
    REQUIRE(*back == p);
  }
  CHECK_FALSE(exact_div(MPoly::var(f, Var::Z0), MPoly::var(f, Var::Z1)).has_value());
}

TEST_CASE("bivariate gcd") {
  const auto f = Field::make(named_field("F16"));
  const auto z0 = MPoly::var(f, Var::Z0), z1 = MPoly::var(f, Var::Z1);
  const auto one = MPoly::constant(f, f.one());
  CHECK(gcd_bivariate(z0 * z0 * z1, z0 * z1 * z1) == z0 * z1);
  CHECK(gcd_bivariate(z0.pow(3) + z1, one) == one);
  CHECK(gcd_bivariate(MPoly(f), (z0 + z1).scaled(f.x())) == z0 + z1);
  CHECK(gcd_bivariate(z1 * (z0 + z1), z1.pow(2)) == z1);
  CHECK_THROWS_AS(gcd_bivariate(MPoly::var(f, Var::X0), z0), std::invalid_argument);

  std::mt19937_64 rng(33);
  for (int t = 0; t < 60; ++t) {
    const auto g = random_poly(f, rng, 3, 2, true);
    const auto u = random_poly(f, rng, 3, 2, true), v = random_poly(f, rng, 3, 2, true);
    if (g.is_zero() || u.is_zero() || v.is_zero()) continue;
    const auto p = g * u, r = g * v;
    const auto h = gcd_bivariate(p, r);
    REQUIRE(h.leading().coef == f.one());
    REQUIRE(exact_div(p, h).has_value());
    REQUIRE(exact_div(r, h).has_value());
    REQUIRE(exact_div(h, g).has_value());
    REQUIRE(gcd_bivariate(r, p) == h);
  }
}

TEST_CASE("gcd is maximal among brute-force common divisors at q = 2") {
  const auto f = Field::make(named_field("F4"));
  const std::vector<Exps> mons{{0, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {0, 0, 2, 0}, {0, 0, 1, 1}, {0, 0, 0, 2}};
  std::vector<MPoly> candidates;
  for (std::uint32_t code = 1; code < 4096; ++code) {
    MPoly c(f);
    for (std::size_t i = 0; i < mons.size(); ++i) c += MPoly::monomial(f, Elem{(code >> (2 * i)) & 3}, mons[i]);
    if (c.total_degree() > 0) candidates.push_back(c);
  }
  std::mt19937_64 rng(34);
  for (int t = 0; t < 25; ++t) {
    const auto g = random_poly(f, rng, 2, 1, true);
    const auto p = g * random_poly(f, rng, 3, 2, true), r = g * random_poly(f, rng, 3, 2, true);
    if (p.is_zero() || r.is_zero()) continue;
    const auto h = gcd_bivariate(p, r);
    for (const auto& c : candidates)
      if (exact_div(p, c) && exact_div(r, c)) REQUIRE(exact_div(h, c).has_value());
  }
}

TEST_CASE("resultant in Z0 matches numeric Sylvester determinants") {
  for (const char* name : {"F16", "F256"}) {
    const auto f = Field::make(named_field(name));
    const auto g = std::string(name) == "F16" ? oracle::F16() : oracle::F256();
    std::mt19937_64 rng(35);
    for (int t = 0; t < 30; ++t) {
      const unsigned m = 1 + rng() % 3, n = 1 + rng() % 4;
      MPoly p(f), r(f);
      for (unsigned i = 0; i <= m; ++i)
        for (unsigned j = 0; j < 3; ++j) p += MPoly::monomial(f, Elem{std::uint32_t(rng() % f.size())}, {0, 0, i, j});
      for (unsigned i = 0; i <= n; ++i)
        for (unsigned j = 0; j < 3; ++j) r += MPoly::monomial(f, Elem{std::uint32_t(rng() % f.size())}, {0, 0, i, j});
      const auto res = resultant_z0(p, r, m, n);
      REQUIRE(res.free_of(Var::Z0));
      for (std::uint32_t z = 0; z < f.size(); z += (f.size() > 16 ? 7 : 1)) {
        const auto a = specialize(g, p, z, m), b = specialize(g, r, z, n);
        std::vector<std::vector<std::uint32_t>> s(m + n, std::vector<std::uint32_t>(m + n, 0));
        for (unsigned i = 0; i < n; ++i)
          for (unsigned j = 0; j <= m; ++j) s[i][i + j] = a[m - j];
        for (unsigned i = 0; i < m; ++i)
          for (unsigned j = 0; j <= n; ++j) s[n + i][i + j] = b[n - j];
        REQUIRE(res.eval({Elem{}, Elem{}, Elem{}, Elem{z}}).bits == det(g, s));
      }
    }
  }
  const auto f = Field::make(named_field("F4"));
  const auto z0 = MPoly::var(f, Var::Z0), z1 = MPoly::var(f, Var::Z1);
  CHECK(resultant_z0(z0 + z1, z0.pow(2) + z1.pow(2), 1, 2).is_zero());
  CHECK(resultant_z0(z0, z0 + z1, 1, 1) == z1);
  CHECK_THROWS_AS(resultant_z0(z0.pow(2), z0, 1, 1), std::invalid_argument);
}
