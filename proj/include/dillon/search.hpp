#pragma once

// Exhaustive and seeded random searches over hexanomial coefficient tuples.

#include <cstdint>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "dillon/errors.hpp"
#include "dillon/hexanomial.hpp"

namespace dillon {

/// SplitMix64: state += 0x9E3779B97F4A7C15, then
/// z = (state ^ (state >> 30)) * 0xBF58476D1CE4E5B9,
/// z = (z ^ (z >> 27)) * 0x94D049BB133111EB, output z ^ (z >> 31).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// Uniform in [0, n) by the multiply-shift reduction (x * n) >> 64.
  std::uint64_t below(std::uint64_t n);
  static std::uint64_t mix(std::uint64_t z);

 private:
  std::uint64_t state_;
};

struct Filters {
  bool require_a_nonzero = false;
  bool exclude_c1_c2 = false;
  std::set<int> cases;       // keep tuples matching any of these summary cases; empty keeps all
  bool prioritized = false;  // skip tuples whose verdict is ExcludedByTheory

  bool none() const { return !require_a_nonzero && !exclude_c1_c2 && cases.empty() && !prioritized; }
  bool accepts(const Field& f, const Coeffs& c) const;
  std::string to_string() const;
};

/// Comma-separated: `none`, `a-nonzero`, `no-c1c2`, `standard` (both of the
/// previous), `prioritized`, `cases=9;10`. Throws std::invalid_argument.
Filters parse_filters(std::string_view text);

enum class SearchMode { Exhaustive, Random };

struct SearchJob {
  FieldSpec field;
  SearchMode mode = SearchMode::Exhaustive;
  std::uint64_t samples = 0;          // random mode
  std::optional<std::uint64_t> seed;  // required in random mode
  unsigned shards = 1;
  Filters filters;
  bool force_gate = false;
};

struct Counters {
  std::uint64_t tested = 0;
  std::uint64_t skipped_by_filter = 0;
  std::uint64_t apn = 0;
  std::uint64_t permutations = 0;  // APN tuples that are permutations

  Counters& operator+=(const Counters& o);
  friend bool operator==(const Counters&, const Counters&) = default;
};

struct Manifest {
  std::string field;
  std::string mode;
  std::optional<std::uint64_t> seed;
  std::uint64_t samples = 0;
  unsigned shards = 1;
  std::string filters;
  std::uint64_t universe = 0;
  double wall_seconds = 0;
  std::string tool_version;
};

struct SearchResult {
  std::vector<Coeffs> apn_hits;  // sorted by tuple index, unique
  Counters counters;
  std::optional<Counters> unfiltered;  // exhaustive mode: the same scan with no filters
  Manifest manifest;

  std::string manifest_json() const;
};

/// Largest universe (q^2)^5 enumerated without forcing: 2^30, i.e. q <= 8.
inline constexpr std::uint64_t kExhaustiveGate = 1ull << 30;

/// Visits every tuple once over contiguous index shards. Tuples are tested
/// with the early-abort DDT test; every hit is re-checked by the full profile
/// and the derivative equation (std::logic_error on disagreement).
SearchResult run_exhaustive(const SearchJob& job);

/// Sample k uses its own generator SplitMix64(SplitMix64::mix(seed + k)) and
/// draws tuple indices uniformly until one passes the filters; rejected draws
/// count as skipped_by_filter. Output depends only on (seed, samples, filters).
SearchResult run_random(const SearchJob& job);

SearchResult run_search(const SearchJob& job);

/// One JSON object per hit: field, A..E in power notation, univariate,
/// is_permutation, matched_cases, fingerprint_hash.
std::string hit_record_json(const Field& f, const Coeffs& c);
void write_hits_jsonl(std::ostream& os, const Field& f, const std::vector<Coeffs>& hits);

}  // namespace dillon
