#include "dillon/invariants.hpp"

#include <cstdio>
#include <map>
#include <sstream>
#include <thread>

#include "dillon/gf2matrix.hpp"
#include "json.hpp"

namespace dillon {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::size_t gamma_delta_rank(const Field& field, const Lut& f, RankKind which, bool force) {
  const std::uint64_t n = f.size(), side = n * n;
  if (side > kRankGate && !force) {
    std::ostringstream os;
    os << "rank matrix is " << side << " x " << side << " (about " << (side * side / 8) / (1u << 20)
       << " MiB packed); the gate allows side <= " << kRankGate << ", pass --force-gate to override";
    throw GateExceeded(os.str());
  }
  const unsigned bits = field.degree();
  std::vector<std::uint64_t> set;
  if (which == RankKind::Gamma) {
    for (std::uint64_t x = 0; x < n; ++x) set.push_back((x << bits) | f[x].bits);
  } else {
    const auto t = ddt(f);
    for (std::uint64_t a = 1; a < n; ++a)
      for (std::uint64_t b = 0; b < n; ++b)
        if (t[a][b]) set.push_back((a << bits) | b);
  }
  BitMatrix m(side, side);
  for (std::uint64_t u = 0; u < side; ++u)
    for (const auto s : set) m.set(u, u ^ s);
  return m.rank();
}

std::size_t gamma_delta_rank(const Field& field, const Coeffs& c, RankKind which, bool force) {
  return gamma_delta_rank(field, truth_table(field, c), which, force);
}

std::string Fingerprint::canonical() const {
  std::ostringstream os;
  os << "diff=" << serialize_spectrum(diff_spectrum) << ";walsh=" << serialize_spectrum(walsh_spectrum);
  os << ";gamma=" << (gamma_rank ? std::to_string(*gamma_rank) : "-");
  os << ";delta=" << (delta_rank ? std::to_string(*delta_rank) : "-");
  return os.str();
}

std::string Fingerprint::hash_hex() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

std::string Fingerprint::to_json() const {
  auto pairs = [](const std::map<std::uint32_t, std::uint64_t>& s) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& [v, n] : s) a.push_back({v, n});
    return a;
  };
  nlohmann::json j;
  j["diff_spectrum"] = pairs(diff_spectrum);
  j["walsh_spectrum"] = pairs(walsh_spectrum);
  if (gamma_rank) j["gamma_rank"] = *gamma_rank;
  if (delta_rank) j["delta_rank"] = *delta_rank;
  j["hash"] = hash_hex();
  return j.dump();
}

Fingerprint fingerprint(const Field& field, const Coeffs& c, const FingerprintOptions& opts) {
  const auto lut = truth_table(field, c);
  Fingerprint fp;
  fp.diff_spectrum = diff_profile(lut).spectrum;
  fp.walsh_spectrum = extended_walsh_spectrum(field, lut);
  if (opts.ranks) {
    fp.gamma_rank = gamma_delta_rank(field, lut, RankKind::Gamma, opts.force_gate);
    fp.delta_rank = gamma_delta_rank(field, lut, RankKind::Delta, opts.force_gate);
  }
  fp.hash = fnv1a(fp.canonical());
  return fp;
}

std::vector<FingerprintGroup> partition_by_fingerprint(const Field& field, const std::vector<Coeffs>& tuples,
                                                       const FingerprintOptions& opts, unsigned threads) {
  std::vector<Fingerprint> fps(tuples.size());
  threads = std::max(1u, threads);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < tuples.size(); i += threads) fps[i] = fingerprint(field, tuples[i], opts);
    });
  for (auto& th : pool) th.join();

  std::vector<FingerprintGroup> groups;
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    const auto key = fps[i].canonical();
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, groups.size()).first;
      groups.push_back({fps[i], {}});
    }
    groups[it->second].members.push_back(tuples[i]);
  }
  return groups;
}

std::vector<FingerprintGroup> partition_by_fingerprint(const std::vector<FieldTuple>& tuples,
                                                       const FingerprintOptions& opts, unsigned threads) {
  if (tuples.empty()) return {};
  std::vector<Coeffs> cs;
  for (const auto& t : tuples) {
    if (!(t.field == tuples.front().field))
      throw std::invalid_argument("cannot partition tuples from different fields: " +
                                  format_field_spec(tuples.front().field) + " and " + format_field_spec(t.field));
    cs.push_back(t.c);
  }
  return partition_by_fingerprint(Field::make(tuples.front().field), cs, opts, threads);
}

void write_partition_csv(std::ostream& os, const Field& field, const std::vector<FingerprintGroup>& groups) {
  os << "group_id,size,representative,hash\n";
  for (std::size_t g = 0; g < groups.size(); ++g)
    os << g << ',' << groups[g].members.size() << ",\"" << format_coeffs(field, groups[g].members.front()) << "\","
       << groups[g].fp.hash_hex() << '\n';
}

}  // namespace dillon
