#include "doctest.h"

#include <random>
#include <sstream>

#include "dillon/gf2matrix.hpp"
#include "dillon/invariants.hpp"
#include "oracles.hpp"

using namespace dillon;

namespace {

Coeffs rescale(const Field& f, const Coeffs& c, Elem l) {
  const std::uint64_t q = f.q(), ord = f.size() - 1;
  auto k = [&](Elem v, std::uint64_t e) { return f.mul(v, f.pow(l, (e + ord * 8 - 3 * q) % ord)); };
  return {k(c.A, 3), k(c.B, q + 1), k(c.C, 2 * q + 1), k(c.D, q + 2), k(c.E, 2 * q + 2)};
}

/// Dense incidence matrix built independently from the DDT/graph oracle.
int dense_rank(const std::vector<std::uint32_t>& f, unsigned bits, bool delta) {
  const std::size_t n = f.size(), side = n * n;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> s;
  if (!delta) {
    for (std::uint32_t x = 0; x < n; ++x) s.emplace_back(x, f[x]);
  } else {
    const auto d = oracle::ddt(f);
    for (std::uint32_t a = 1; a < n; ++a)
      for (std::uint32_t b = 0; b < n; ++b)
        if (d[a][b]) s.emplace_back(a, b);
  }
  std::vector<std::vector<bool>> m(side, std::vector<bool>(side, false));
  for (std::size_t u = 0; u < side; ++u) {
    const std::uint32_t ux = u >> bits, uy = u & (n - 1);
    for (const auto& [sx, sy] : s) m[u][((ux ^ sx) << bits) | (uy ^ sy)] = true;
  }
  return oracle::rank(m);
}

}  // namespace

TEST_CASE("packed rank matches dense elimination on random matrices") {
  std::mt19937 rng(12);
  for (int t = 0; t < 40; ++t) {
    const std::size_t r = 1 + rng() % 150, c = 1 + rng() % 150;
    BitMatrix m(r, c);
    std::vector<std::vector<bool>> d(r, std::vector<bool>(c, false));
    const unsigned density = 1 + rng() % 8;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (rng() % density == 0) {
          m.set(i, j);
          d[i][j] = true;
        }
    REQUIRE(m.rank() == static_cast<std::size_t>(oracle::rank(d)));
  }
  BitMatrix id(70, 70);
  for (std::size_t i = 0; i < 70; ++i) id.set(i, i);
  CHECK(id.rank() == 70);
  id.set(3, 3, false);
  CHECK_FALSE(id.get(3, 3));
  CHECK(id.rank() == 69);
}

TEST_CASE("gamma rank of the zero function over F4 is 4") {
  const auto f = Field::make(named_field("F4"));
  CHECK(gamma_delta_rank(f, Lut(4, Elem{}), RankKind::Gamma) == 4);
}

TEST_CASE("ranks match the dense oracle on F4 and F16 tuples") {
  const auto f4 = Field::make(named_field("F4"));
  const auto g4 = oracle::F4();
  const Coeffs rep{f4.x(), {}, {}, {}, f4.x()};
  const auto raw = oracle::table(g4, {2, 0, 0, 0, 2});
  const auto gamma = gamma_delta_rank(f4, rep, RankKind::Gamma);
  CHECK(gamma == static_cast<std::size_t>(dense_rank(raw, 2, false)));
  CHECK(gamma_delta_rank(f4, rep, RankKind::Delta) == static_cast<std::size_t>(dense_rank(raw, 2, true)));
  MESSAGE("gamma rank of (a,0,0,0,a) over F4: " << gamma);

  const auto f16 = Field::make(named_field("F16"));
  const oracle::GF g16 = oracle::F16();
  std::mt19937_64 rng(13);
  for (int t = 0; t < 3; ++t) {
    const auto c = tuple_at(f16, rng() % (1u << 20));
    const auto r = oracle::table(g16, {c.A.bits, c.B.bits, c.C.bits, c.D.bits, c.E.bits});
    REQUIRE(gamma_delta_rank(f16, c, RankKind::Gamma) == static_cast<std::size_t>(dense_rank(r, 4, false)));
    REQUIRE(gamma_delta_rank(f16, c, RankKind::Delta) == static_cast<std::size_t>(dense_rank(r, 4, true)));
  }
}

TEST_CASE("ranks are invariant under x -> l x and output scaling") {
  for (const char* name : {"F4", "F16"}) {
    CAPTURE(name);
    const auto f = Field::make(named_field(name));
    std::mt19937_64 rng(14);
    for (int t = 0; t < 6; ++t) {
      const auto c = tuple_at(f, rng() % (std::uint64_t{1} << (5 * f.degree())));
      const Elem l{static_cast<std::uint32_t>(1 + rng() % (f.size() - 1))};
      const auto c2 = rescale(f, c, l);
      Lut scaled = truth_table(f, c);
      for (auto& y : scaled) y = f.mul(l, y);
      for (auto kind : {RankKind::Gamma, RankKind::Delta}) {
        const auto base = gamma_delta_rank(f, c, kind);
        REQUIRE(gamma_delta_rank(f, c2, kind) == base);
        REQUIRE(gamma_delta_rank(f, scaled, kind) == base);
      }
    }
  }
}

TEST_CASE("rank gate refuses q = 16 without force") {
  const auto f = Field::make(named_field("F256"));
  CHECK_THROWS_AS(gamma_delta_rank(f, Coeffs{}, RankKind::Gamma), GateExceeded);
  try {
    gamma_delta_rank(f, Coeffs{}, RankKind::Delta);
  } catch (const GateExceeded& e) {
    CHECK(std::string(e.what()).find("65536") != std::string::npos);
  }
  CHECK_THROWS_AS(fingerprint(f, Coeffs{}, {.ranks = true}), GateExceeded);
  CHECK_NOTHROW(fingerprint(f, Coeffs{}));
}

TEST_CASE("fingerprints") {
  const auto f = Field::make(named_field("F16"));
  const Coeffs rep{f.x(), {}, {}, f.x(), {}};
  const auto fp = fingerprint(f, rep, {.ranks = true});
  CHECK(fp.gamma_rank.has_value());
  CHECK(fp.hash == fnv1a(fp.canonical()));
  CHECK(fp.canonical().starts_with("diff=0:"));
  const auto j = fp.to_json();
  CHECK(j.find("\"hash\":\"" + fp.hash_hex() + "\"") != std::string::npos);
  CHECK(j.find("gamma_rank") != std::string::npos);
  CHECK(fingerprint(f, rep).to_json().find("gamma_rank") == std::string::npos);
  CHECK(fnv1a("") == 0xcbf29ce484222325ull);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cull);
}

TEST_CASE("partition by fingerprint") {
  const auto f = Field::make(named_field("F16"));
  CHECK(partition_by_fingerprint(f, {}).empty());
  CHECK(partition_by_fingerprint(std::vector<FieldTuple>{}).empty());

  const Coeffs rep{f.x(), {}, {}, f.x(), {}};
  std::vector<Coeffs> batch{rep};
  for (std::uint32_t l = 2; l < 16; l += 3) batch.push_back(rescale(f, rep, Elem{l}));
  Coeffs other{};
  for (std::uint64_t i = 1; is_apn_ddt(f, other); ++i) other = tuple_at(f, i);
  batch.push_back(other);
  const auto groups = partition_by_fingerprint(f, batch, {.ranks = true}, 3);
  REQUIRE(groups.size() == 2);
  CHECK(groups[0].members.size() == batch.size() - 1);
  CHECK(groups[1].members.front() == other);
  for (const auto& g : groups)
    for (const auto& m : g.members) REQUIRE(fingerprint(f, m, {.ranks = true}) == g.fp);

  std::ostringstream os;
  write_partition_csv(os, f, groups);
  CHECK(os.str().starts_with("group_id,size,representative,hash\n0,6,\"a,0,0,a,0\","));

  const std::vector<FieldTuple> mixed{{named_field("F4"), {}}, {named_field("F16"), {}}};
  CHECK_THROWS_AS(partition_by_fingerprint(mixed), std::invalid_argument);
}

TEST_CASE("F64 table representatives: fingerprints recorded and compared") {
  const auto f = Field::make(named_field("F64"));
  std::vector<Fingerprint> fps;
  for (const char* t : {"a^23,a^23,a^47,a^25,a^29", "a^35,a^46,a^6,a^20,a^31", "a^37,0,a^41,a^28,0"})
    fps.push_back(fingerprint(f, parse_coeffs(f, t), {.ranks = true}));
  for (std::size_t i = 0; i < fps.size(); ++i) {
    MESSAGE("F64 row " << i + 1 << ": " << fps[i].to_json());
    for (std::size_t j = i + 1; j < fps.size(); ++j)
      MESSAGE("rows " << i + 1 << "," << j + 1 << std::string(fps[i] == fps[j] ? " share" : " differ in") << " fingerprint");
  }
  CHECK(fps[0].diff_spectrum == fps[1].diff_spectrum);  // all APN: identical differential spectra
}
