#include "doctest.h"

#include <random>
#include <set>
#include <sstream>

#include "dillon/diffanalysis.hpp"
#include "oracles.hpp"

using namespace dillon;

namespace {

std::array<std::uint32_t, 5> raw(const Coeffs& c) { return {c.A.bits, c.B.bits, c.C.bits, c.D.bits, c.E.bits}; }

oracle::GF oracle_for(const Field& f) { return {f.degree(), static_cast<std::uint32_t>(f.spec().modulus)}; }

}  // namespace

TEST_CASE("DDT structural facts") {
  const auto f = Field::make(named_field("F16"));
  std::mt19937_64 rng(1);
  for (int t = 0; t < 50; ++t) {
    const auto c = tuple_at(f, rng() % (1u << 20));
    const auto d = ddt(f, c);
    CHECK(d[0][0] == 16);
    for (std::uint32_t a = 0; a < 16; ++a) {
      std::uint32_t sum = 0;
      for (std::uint32_t b = 0; b < 16; ++b) {
        sum += d[a][b];
        REQUIRE(d[a][b] % 2 == 0);
        if (a == 0 && b) REQUIRE(d[a][b] == 0);
      }
      REQUIRE(sum == 16);
    }
    const auto p = diff_profile(f, c);
    std::uint64_t weighted = 0, total = 0;
    for (const auto& [v, n] : p.spectrum) {
      weighted += v * n;
      total += n;
    }
    CHECK(weighted == 15 * 16);
    CHECK(total == 15 * 16);
    CHECK(p.is_apn == (p.uniformity == 2));
  }
}

TEST_CASE("table representative (a,0,0,0,a) over F4") {
  const auto f = Field::make(named_field("F4"));
  const Coeffs c{f.x(), {}, {}, {}, f.x()};
  const auto p = diff_profile(f, c);
  CHECK(p.uniformity == 2);
  CHECK(is_apn_ddt(f, c));
  CHECK(is_apn_equation(f, c));
  CHECK_FALSE(is_permutation(f, c));
}

TEST_CASE("table representatives over F16 and F64") {
  const auto f16 = Field::make(named_field("F16"));
  CHECK(is_apn_equation(f16, {f16.x(), {}, {}, f16.x(), {}}));
  CHECK(is_apn_ddt(f16, {f16.x(), {}, {}, f16.x(), {}}));
  const auto f64 = Field::make(named_field("F64"));
  const auto c = parse_coeffs(f64, "a^23,a^23,a^47,a^25,a^29");
  CHECK(is_apn_ddt(f64, c));
  CHECK(oracle::apn(oracle_for(f64), raw(c)));
}

TEST_CASE("x^{3q} over F4 is not a permutation") {
  const auto f = Field::make(named_field("F4"));
  const Coeffs zero{};
  CHECK_FALSE(is_permutation(f, zero));
  std::set<std::uint32_t> image;
  for (std::uint32_t x = 0; x < 4; ++x) image.insert(oracle::hexanomial(oracle::F4(), raw(zero), x));
  CHECK(image.size() == 2);
}

TEST_CASE("both APN tests match the full-DDT oracle on every F4 tuple") {
  const auto f = Field::make(named_field("F4"));
  const auto g = oracle::F4();
  for (std::uint64_t i = 0; i < 1024; ++i) {
    const auto c = tuple_at(f, i);
    const bool truth = oracle::apn(g, raw(c));
    REQUIRE(is_apn_ddt(f, c) == truth);
    REQUIRE(is_apn_equation(f, c) == truth);
    REQUIRE(diff_profile(f, c).is_apn == truth);
  }
  CHECK(is_apn_ddt(f, {f.one(), {}, {}, {}, {}}) == oracle::apn(g, {1, 0, 0, 0, 0}));
}

TEST_CASE("APN tests agree on random F16 tuples and early abort matches the full table") {
  for (const char* name : {"F16", "F64"}) {
    CAPTURE(name);
    const auto f = Field::make(named_field(name));
    const auto g = oracle_for(f);
    std::mt19937_64 rng(2);
    const int trials = f.size() == 16 ? 10000 : 1000;
    for (int t = 0; t < trials; ++t) {
      Coeffs c;
      c.A = Elem{static_cast<std::uint32_t>(rng() % f.size())};
      c.B = Elem{static_cast<std::uint32_t>(rng() % f.size())};
      c.C = Elem{static_cast<std::uint32_t>(rng() % f.size())};
      c.D = Elem{static_cast<std::uint32_t>(rng() % f.size())};
      c.E = Elem{static_cast<std::uint32_t>(rng() % f.size())};
      const bool early = is_apn_ddt(f, c);
      REQUIRE(early == is_apn_equation(f, c));
      if (t < 1000) REQUIRE(early == (oracle::uniformity(oracle::table(g, raw(c))) == 2));
    }
  }
}

TEST_CASE("DDT CSV export") {
  const auto f = Field::make(named_field("F4"));
  std::ostringstream os;
  write_ddt_csv(os, ddt(f, {f.x(), {}, {}, {}, f.x()}));
  const auto s = os.str();
  CHECK(s.substr(0, s.find('\n')) == "4,0,0,0");
  CHECK(std::count(s.begin(), s.end(), '\n') == 4);
}
