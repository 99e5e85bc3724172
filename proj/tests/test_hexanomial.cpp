#include "doctest.h"

#include <random>

#include "dillon/hexanomial.hpp"
#include "oracles.hpp"

using namespace dillon;

TEST_CASE("evaluate examples") {
  const auto f = Field::make(named_field("F4"));
  const Coeffs c{f.x(), {}, {}, {}, f.x()};
  CHECK(evaluate(f, c, f.zero()) == f.zero());
  CHECK(evaluate(f, c, f.x()) == f.one());
  const auto g = Field::make(named_field("F16"));
  const Coeffs d{g.gen_pow(3), g.gen_pow(5), g.gen_pow(7), g.gen_pow(11), g.gen_pow(13)};
  CHECK(evaluate(g, d, g.one()) == d.A + d.B + d.C + d.D + d.E + g.one());
}

TEST_CASE("evaluate agrees with the monomial oracle") {
  for (const char* name : {"F4", "F16", "F64", "F256"}) {
    CAPTURE(name);
    const auto f = Field::make(named_field(name));
    const oracle::GF g{f.degree(), static_cast<std::uint32_t>(f.spec().modulus)};
    std::mt19937 rng(5);
    for (int t = 0; t < 20; ++t) {
      std::array<std::uint32_t, 5> raw{};
      for (auto& v : raw) v = rng() % f.size();
      const Coeffs c{Elem{raw[0]}, Elem{raw[1]}, Elem{raw[2]}, Elem{raw[3]}, Elem{raw[4]}};
      const auto lut = truth_table(f, c);
      for (std::uint32_t x = 0; x < f.size(); ++x) REQUIRE(lut[x].bits == oracle::hexanomial(g, raw, x));
    }
  }
}

TEST_CASE("to_univariate examples") {
  const auto f4 = Field::make(named_field("F4"));
  const auto f16 = Field::make(named_field("F16"));
  const Elem a4 = f4.x(), a16 = f16.x();
  CHECK(format_univariate(f4, to_univariate(f4, {a4, {}, {}, {}, a4})) == "a^2 x^6 + a x^3");
  CHECK(format_univariate(f16, to_univariate(f16, {a16, {}, {}, a16, {}})) == "x^12 + a x^6 + a x^3");
  const auto p = to_univariate(f4, {f4.one(), a4, {}, f4.one(), f4.one()});
  CHECK(format_univariate(f4, p, {Notation::Basis, TermOrder::Ascending}) == "(a + 1) x^3 + x^4");
  CHECK(format_univariate(f4, p) == "x^4 + a^2 x^3");
  CHECK(format_univariate(f4, UnivariateForm{}) == "0");
}

TEST_CASE("exponent collisions occur only at q = 2") {
  CHECK(exponent_collisions(2) == std::vector<std::vector<int>>{{0, 1}, {4, 5}});
  for (std::uint32_t q : {4u, 8u, 16u, 32u}) CHECK(exponent_collisions(q).empty());
}

TEST_CASE("univariate form agrees with evaluate everywhere (exhaustive at q = 2, sampled at q = 4)") {
  const auto f4 = Field::make(named_field("F4"));
  for (std::uint64_t i = 0; i < 1024; ++i) {
    const auto c = tuple_at(f4, i);
    const auto u = to_univariate(f4, c);
    for (std::uint32_t x = 0; x < 4; ++x) REQUIRE(u.eval(f4, Elem{x}) == evaluate(f4, c, Elem{x}));
  }
  const auto f16 = Field::make(named_field("F16"));
  std::mt19937_64 rng(9);
  for (int t = 0; t < 2000; ++t) {
    const auto c = tuple_at(f16, rng() % (1u << 20));
    const auto u = to_univariate(f16, c);
    REQUIRE(u.terms.back().exponent == 12);
    REQUIRE(u.terms.back().coef == f16.one());
    for (std::uint32_t x = 0; x < 16; ++x) REQUIRE(u.eval(f16, Elem{x}) == evaluate(f16, c, Elem{x}));
  }
}

TEST_CASE("tuple indexing is a bijection with A most significant") {
  const auto f = Field::make(named_field("F16"));
  CHECK(tuple_index(f, {Elem{1}, {}, {}, {}, {}}) == 65536);
  CHECK(tuple_index(f, {{}, {}, {}, {}, Elem{1}}) == 1);
  for (std::uint64_t i : {0ull, 1ull, 12345ull, 1048575ull}) CHECK(tuple_index(f, tuple_at(f, i)) == i);
}

TEST_CASE("coefficient tuples parse in power and hex notation") {
  const auto f = Field::make(named_field("F64"));
  const auto c = parse_coeffs(f, "a^23,a^23,a^47,a^25,a^29");
  CHECK(c.C == f.gen_pow(47));
  CHECK(format_coeffs(f, c) == "a^23,a^23,a^47,a^25,a^29");
  CHECK(parse_coeffs(f, "0x1, 0, a, 0x3F, a^62") == Coeffs{f.one(), {}, f.x(), Elem{0x3F}, f.gen_pow(62)});
  CHECK_THROWS(parse_coeffs(f, "1,2,3,4"));
  CHECK_THROWS(parse_coeffs(f, "1,2,3,4,5,6"));
}

TEST_CASE("appendix-style polynomial strings round-trip") {
  const auto f16 = Field::make(named_field("F16"));
  const auto f256 = Field::make(named_field("F256"));
  for (const char* s : {"x^12 + a x^6 + a x^3", "a^{2} x^{6} + a x^{3}", "$x^{12} + a^{7}x^{9} + a^{14}x^{5}$"}) {
    CAPTURE(s);
    const auto p = parse_univariate(f16, s);
    CHECK(parse_univariate(f16, format_univariate(f16, p)) == p);
    CHECK(parse_univariate(f16, format_univariate(f16, p, {Notation::Basis, TermOrder::Ascending})) == p);
  }
  const auto p = parse_univariate(f256, "x^{48} + a^{17}x^{34} + (a^3 + a + 1) x^{33} + a^{68} x^{18}");
  REQUIRE(p.terms.size() == 4);
  CHECK(p.terms[2].exponent == 34);
  CHECK(p.terms[1].coef == Elem{0xB});
  CHECK(parse_univariate(f256, format_univariate(f256, p, {Notation::Basis})) == p);
  const auto sample = to_univariate(f256, parse_coeffs(f256, "a^25,a^51,a^34,a^68,a^17"));
  CHECK(parse_univariate(f256, format_univariate(f256, sample)) == sample);
  CHECK_THROWS(parse_univariate(f16, "x^"));
  CHECK_THROWS(parse_univariate(f16, "(a + 1 x^3"));
}
