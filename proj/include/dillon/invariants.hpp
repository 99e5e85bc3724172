#pragma once

// CCZ-invariant fingerprints. Equal fingerprints are necessary for CCZ
// equivalence; different fingerprints certify inequivalence.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "dillon/errors.hpp"
#include "dillon/walsh.hpp"

namespace dillon {

enum class RankKind { Gamma, Delta };

/// Largest matrix side N^2 allowed without forcing (q <= 8).
inline constexpr std::uint64_t kRankGate = 4096;

/// GF(2)-rank of the N^2 x N^2 incidence matrix M[u][v] = [u + v in S], where
/// S is the graph of f (Gamma) or the DDT support with a != 0 (Delta).
/// Throws GateExceeded when N^2 > kRankGate and force is false.
std::size_t gamma_delta_rank(const Field& field, const Lut& f, RankKind which, bool force = false);
std::size_t gamma_delta_rank(const Field& field, const Coeffs& c, RankKind which, bool force = false);

struct FingerprintOptions {
  bool ranks = false;
  bool force_gate = false;
};

struct Fingerprint {
  std::map<std::uint32_t, std::uint64_t> diff_spectrum;
  WalshSpectrum walsh_spectrum;
  std::optional<std::size_t> gamma_rank, delta_rank;
  std::uint64_t hash = 0;

  /// `diff=..;walsh=..;gamma=..;delta=..` with sorted spectra.
  std::string canonical() const;
  std::string hash_hex() const;
  std::string to_json() const;
  friend bool operator==(const Fingerprint& a, const Fingerprint& b) { return a.canonical() == b.canonical(); }
};

Fingerprint fingerprint(const Field& field, const Coeffs& c, const FingerprintOptions& opts = {});

struct FieldTuple {
  FieldSpec field;
  Coeffs c;
};

struct FingerprintGroup {
  Fingerprint fp;
  std::vector<Coeffs> members;  // input order
};

/// Groups by fingerprint in order of first appearance. Throws
/// std::invalid_argument when the tuples belong to different fields.
std::vector<FingerprintGroup> partition_by_fingerprint(const std::vector<FieldTuple>& tuples,
                                                       const FingerprintOptions& opts = {}, unsigned threads = 1);
std::vector<FingerprintGroup> partition_by_fingerprint(const Field& field, const std::vector<Coeffs>& tuples,
                                                       const FingerprintOptions& opts = {}, unsigned threads = 1);

/// group_id,size,representative,hash
void write_partition_csv(std::ostream& os, const Field& field, const std::vector<FingerprintGroup>& groups);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view s);

}  // namespace dillon
