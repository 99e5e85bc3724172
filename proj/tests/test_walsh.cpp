#include "doctest.h"

#include <random>

#include "dillon/walsh.hpp"
#include "oracles.hpp"

using namespace dillon;

namespace {

/// Coefficients of f(l x) / l^{3q}, which keeps the leading monomial monic.
Coeffs rescale(const Field& f, const Coeffs& c, Elem l) {
  const std::uint64_t q = f.q(), ord = f.size() - 1;
  auto k = [&](Elem v, std::uint64_t e) { return f.mul(v, f.pow(l, (e + ord * 8 - 3 * q) % ord)); };
  return {k(c.A, 3), k(c.B, q + 1), k(c.C, 2 * q + 1), k(c.D, q + 2), k(c.E, 2 * q + 2)};
}

Coeffs random_tuple(const Field& f, std::mt19937_64& rng) {
  return tuple_at(f, rng() % (std::uint64_t{f.size()} * f.size() * f.size() * f.size() * f.size()));
}

}  // namespace

TEST_CASE("trivial Walsh values") {
  const auto f = Field::make(named_field("F16"));
  const auto lut = truth_table(f, {f.x(), {}, {}, f.x(), {}});
  CHECK(walsh_coefficient(f, lut, f.zero(), f.zero()) == 16);
  for (std::uint32_t a = 1; a < 16; ++a) CHECK(walsh_coefficient(f, lut, Elem{a}, f.zero()) == 0);
}

TEST_CASE("fast transform matches direct summation oracle") {
  for (const char* name : {"F4", "F16", "F64"}) {
    CAPTURE(name);
    const auto f = Field::make(named_field(name));
    const oracle::GF g{f.degree(), static_cast<std::uint32_t>(f.spec().modulus)};
    std::mt19937_64 rng(4);
    for (int t = 0; t < 3; ++t) {
      const auto c = random_tuple(f, rng);
      const auto lut = truth_table(f, c);
      const auto raw = oracle::table(g, {c.A.bits, c.B.bits, c.C.bits, c.D.bits, c.E.bits});
      for (std::uint32_t b = 0; b < f.size(); b += (f.size() > 16 ? 7 : 1)) {
        const auto col = walsh_column(f, lut, Elem{b});
        for (std::uint32_t a = 0; a < f.size(); ++a) REQUIRE(col[a] == oracle::walsh(g, raw, a, b));
      }
    }
  }
}

TEST_CASE("Parseval per output mask, spectrum size") {
  const auto f4 = Field::make(named_field("F4"));
  const auto lut = truth_table(f4, {f4.x(), {}, {}, {}, f4.x()});
  for (std::uint32_t b = 1; b < 4; ++b) {
    long sum = 0;
    for (const auto w : walsh_column(f4, lut, Elem{b})) sum += long{w} * w;
    CHECK(sum == 16);
  }
  for (const char* name : {"F16", "F64", "F256"}) {
    const auto f = Field::make(named_field(name));
    std::mt19937_64 rng(8);
    const auto l = truth_table(f, random_tuple(f, rng));
    for (std::uint32_t b = 1; b < f.size(); b += 5) {
      std::int64_t sum = 0;
      for (const auto w : walsh_column(f, l, Elem{b})) sum += std::int64_t{w} * w;
      REQUIRE(sum == std::int64_t{f.size()} * f.size());
    }
    std::uint64_t total = 0;
    for (const auto& [v, n] : extended_walsh_spectrum(f, l)) total += n;
    CHECK(total == std::uint64_t{f.size()} * (f.size() - 1));
  }
}

TEST_CASE("spectrum is invariant under x -> l x and output scaling") {
  for (const char* name : {"F4", "F16", "F64"}) {
    CAPTURE(name);
    const auto f = Field::make(named_field(name));
    std::mt19937_64 rng(6);
    for (int t = 0; t < 10; ++t) {
      const auto c = random_tuple(f, rng);
      const Elem l{static_cast<std::uint32_t>(1 + rng() % (f.size() - 1))};
      const auto c2 = rescale(f, c, l);
      // Independent check that rescale really is f(lx)/l^{3q}.
      const Elem s = f.inv(f.pow(l, 3 * f.q()));
      for (std::uint32_t x = 0; x < f.size(); ++x)
        REQUIRE(evaluate(f, c2, Elem{x}) == f.mul(s, evaluate(f, c, f.mul(l, Elem{x}))));
      REQUIRE(extended_walsh_spectrum(f, c) == extended_walsh_spectrum(f, c2));
      Lut scaled = truth_table(f, c);
      for (auto& y : scaled) y = f.mul(l, y);
      REQUIRE(extended_walsh_spectrum(f, scaled) == extended_walsh_spectrum(f, c));
    }
  }
}

TEST_CASE("spectrum serialization is sorted value:count") {
  CHECK(serialize_spectrum({{8, 3}, {0, 5}, {4, 12}}) == "0:5,4:12,8:3");
  CHECK(serialize_spectrum({}).empty());
}
