#include "dillon/search.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "dillon/diffanalysis.hpp"
#include "dillon/invariants.hpp"
#include "dillon/theory.hpp"
#include "json.hpp"

namespace dillon {

namespace {

using json = nlohmann::json;

std::uint64_t universe_size(const Field& f) {
  std::uint64_t n = 1;
  for (int i = 0; i < 5; ++i) n *= f.size();
  return n;
}

struct ShardOutput {
  std::vector<Coeffs> hits;
  Counters filtered, unfiltered;
};

// Tests one tuple; returns whether it is APN.
bool test_tuple(const Field& f, const Coeffs& c, Counters& counters) {
  const Lut lut = truth_table(f, c);
  ++counters.tested;
  if (!is_apn_ddt(lut)) return false;
  ++counters.apn;
  if (is_permutation(lut)) ++counters.permutations;
  return true;
}

void verify_hit(const Field& f, const Coeffs& c) {
  if (!diff_profile(f, c).is_apn || !is_apn_equation(f, c))
    throw std::logic_error("APN hit " + format_coeffs(f, c) + " fails re-verification");
}

template <typename Fn>
void run_sharded(unsigned shards, Fn&& fn) {
  if (shards <= 1) {
    fn(0u);
    return;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(shards);
  for (unsigned s = 0; s < shards; ++s)
    threads.emplace_back([&, s] {
      try {
        fn(s);
      } catch (...) {
        errors[s] = std::current_exception();
      }
    });
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

Manifest base_manifest(const SearchJob& job, const Field& f) {
  Manifest m;
  m.field = format_field_spec(job.field);
  m.mode = job.mode == SearchMode::Exhaustive ? "exhaustive" : "random";
  m.seed = job.mode == SearchMode::Random ? job.seed : std::nullopt;
  m.samples = job.mode == SearchMode::Random ? job.samples : 0;
  m.shards = std::max(1u, job.shards);
  m.filters = job.filters.to_string();
  m.universe = universe_size(f);
  m.tool_version = DILLON_VERSION;
  return m;
}

void sort_unique(std::vector<Coeffs>& hits, const Field& f) {
  std::sort(hits.begin(), hits.end(),
            [&](const Coeffs& a, const Coeffs& b) { return tuple_index(f, a) < tuple_index(f, b); });
  hits.erase(std::unique(hits.begin(), hits.end()), hits.end());
}

json counters_json(const Counters& c) {
  return {{"tested", c.tested}, {"skipped_by_filter", c.skipped_by_filter}, {"apn", c.apn},
          {"permutations", c.permutations}};
}

}  // namespace

std::uint64_t SplitMix64::mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::next() {
  state_ += 0x9E3779B97F4A7C15ull;
  return mix(state_);
}

std::uint64_t SplitMix64::below(std::uint64_t n) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(next()) * n) >> 64);
}

bool Filters::accepts(const Field& f, const Coeffs& c) const {
  if (require_a_nonzero && !c.A) return false;
  if (exclude_c1_c2) {
    const auto c12 = cond_C1_C2(f, c);
    if (c12.c1 || c12.c2) return false;
  }
  if (!cases.empty()) {
    const auto m = match_summary_cases(f, c);
    if (std::none_of(m.begin(), m.end(), [&](int k) { return cases.count(k) > 0; })) return false;
  }
  if (prioritized && predict_verdict(f, c).kind == Verdict::Kind::ExcludedByTheory) return false;
  return true;
}

std::string Filters::to_string() const {
  if (none()) return "none";
  std::vector<std::string> parts;
  if (require_a_nonzero) parts.push_back("a-nonzero");
  if (exclude_c1_c2) parts.push_back("no-c1c2");
  if (!cases.empty()) {
    std::string s = "cases=";
    bool first = true;
    for (int k : cases) {
      s += (first ? "" : ";") + std::to_string(k);
      first = false;
    }
    parts.push_back(s);
  }
  if (prioritized) parts.push_back("prioritized");
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "," : "") + parts[i];
  return out;
}

Filters parse_filters(std::string_view text) {
  Filters f;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find(',', pos), text.size());
    const std::string tok(text.substr(pos, end - pos));
    if (tok == "none" || tok.empty()) {
    } else if (tok == "a-nonzero") {
      f.require_a_nonzero = true;
    } else if (tok == "no-c1c2") {
      f.exclude_c1_c2 = true;
    } else if (tok == "standard") {
      f.require_a_nonzero = f.exclude_c1_c2 = true;
    } else if (tok == "prioritized") {
      f.prioritized = true;
    } else if (tok.rfind("cases=", 0) == 0) {
      std::stringstream ss(tok.substr(6));
      std::string item;
      while (std::getline(ss, item, ';')) {
        std::size_t used = 0;
        int k = 0;
        try {
          k = std::stoi(item, &used);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used != item.size() || k < 1 || k > 11) throw std::invalid_argument("bad summary case '" + item + "'");
        f.cases.insert(k);
      }
    } else {
      throw std::invalid_argument("unknown filter '" + tok + "'");
    }
    pos = end + 1;
  }
  return f;
}

Counters& Counters::operator+=(const Counters& o) {
  tested += o.tested;
  skipped_by_filter += o.skipped_by_filter;
  apn += o.apn;
  permutations += o.permutations;
  return *this;
}

std::string SearchResult::manifest_json() const {
  json j{{"field", manifest.field},
         {"mode", manifest.mode},
         {"seed", manifest.seed ? json(*manifest.seed) : json(nullptr)},
         {"shards", manifest.shards},
         {"filters", manifest.filters},
         {"universe", manifest.universe},
         {"wall_seconds", manifest.wall_seconds},
         {"tool_version", manifest.tool_version},
         {"counters", counters_json(counters)},
         {"hits", apn_hits.size()}};
  if (manifest.mode == "random") j["samples"] = manifest.samples;
  if (unfiltered) j["unfiltered"] = counters_json(*unfiltered);
  return j.dump(2);
}

SearchResult run_exhaustive(const SearchJob& job) {
  if (job.mode != SearchMode::Exhaustive) throw std::invalid_argument("run_exhaustive needs exhaustive mode");
  const auto t0 = std::chrono::steady_clock::now();
  const Field f = Field::make(job.field);
  const std::uint64_t n = universe_size(f);
  if (n > kExhaustiveGate && !job.force_gate) {
    std::ostringstream os;
    os << "exhaustive search over " << format_field_spec(job.field) << " visits " << n
       << " tuples; the gate allows " << kExhaustiveGate << ", pass --force-gate to override";
    throw GateExceeded(os.str());
  }
  const unsigned shards = std::max(1u, job.shards);
  std::vector<ShardOutput> out(shards);
  run_sharded(shards, [&](unsigned s) {
    const std::uint64_t lo = n * s / shards, hi = n * (s + 1) / shards;
    auto& o = out[s];
    for (std::uint64_t i = lo; i < hi; ++i) {
      const Coeffs c = tuple_at(f, i);
      const bool keep = job.filters.accepts(f, c);
      const bool apn = test_tuple(f, c, o.unfiltered);
      if (!keep) {
        ++o.filtered.skipped_by_filter;
        continue;
      }
      ++o.filtered.tested;
      if (!apn) continue;
      verify_hit(f, c);
      ++o.filtered.apn;
      o.hits.push_back(c);
    }
  });

  SearchResult r;
  r.manifest = base_manifest(job, f);
  r.unfiltered = Counters{};
  for (auto& o : out) {
    r.counters += o.filtered;
    *r.unfiltered += o.unfiltered;
    r.apn_hits.insert(r.apn_hits.end(), o.hits.begin(), o.hits.end());
  }
  for (const auto& c : r.apn_hits)
    if (is_permutation(f, c)) ++r.counters.permutations;
  sort_unique(r.apn_hits, f);
  r.manifest.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

SearchResult run_random(const SearchJob& job) {
  if (job.mode != SearchMode::Random) throw std::invalid_argument("run_random needs random mode");
  if (!job.seed) throw std::invalid_argument("random mode requires an explicit seed");
  const auto t0 = std::chrono::steady_clock::now();
  const Field f = Field::make(job.field);
  const std::uint64_t n = universe_size(f);
  const unsigned shards = std::max(1u, job.shards);
  std::vector<ShardOutput> out(shards);
  run_sharded(shards, [&](unsigned s) {
    const std::uint64_t lo = job.samples * s / shards, hi = job.samples * (s + 1) / shards;
    auto& o = out[s];
    for (std::uint64_t k = lo; k < hi; ++k) {
      SplitMix64 rng(SplitMix64::mix(*job.seed + k));
      Coeffs c;
      for (;;) {
        c = tuple_at(f, rng.below(n));
        if (job.filters.accepts(f, c)) break;
        ++o.filtered.skipped_by_filter;
      }
      if (!test_tuple(f, c, o.filtered)) continue;
      verify_hit(f, c);
      o.hits.push_back(c);
    }
  });

  SearchResult r;
  r.manifest = base_manifest(job, f);
  for (auto& o : out) {
    r.counters += o.filtered;
    r.apn_hits.insert(r.apn_hits.end(), o.hits.begin(), o.hits.end());
  }
  sort_unique(r.apn_hits, f);
  r.manifest.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

SearchResult run_search(const SearchJob& job) {
  return job.mode == SearchMode::Exhaustive ? run_exhaustive(job) : run_random(job);
}

std::string hit_record_json(const Field& f, const Coeffs& c) {
  json j{{"field", format_field_spec(f.spec())}};
  const char* names[] = {"A", "B", "C", "D", "E"};
  const auto arr = c.as_array();
  for (int i = 0; i < 5; ++i) j[names[i]] = f.format(arr[i], Notation::Power);
  j["univariate"] = format_univariate(f, to_univariate(f, c));
  j["is_permutation"] = is_permutation(f, c);
  j["matched_cases"] = match_summary_cases(f, c);
  j["fingerprint_hash"] = fingerprint(f, c).hash_hex();
  return j.dump();
}

void write_hits_jsonl(std::ostream& os, const Field& f, const std::vector<Coeffs>& hits) {
  for (const auto& c : hits) os << hit_record_json(f, c) << '\n';
}

}  // namespace dillon
