#pragma once

// Closed-form coefficient conditions for Dillon hexanomials and the eleven
// cases under which an APN hexanomial can occur. All of these are asymptotic
// statements (q large); at small q they are reported, not enforced.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dillon/hexanomial.hpp"

namespace dillon {

struct C1C2 {
  bool c1 = false, c2 = false;
};

C1C2 cond_C1_C2(const Field& f, const Coeffs& c);
bool cond_C6(const Field& f, const Coeffs& c);
Elem h1_value(const Field& f, const Coeffs& c);

struct P1P2 {
  Elem p1, p2;
};

P1P2 p1_p2_values(const Field& f, const Coeffs& c);

struct CubicRoots {
  bool has_root = false;            // some T in GF(q^2)
  bool has_unit_norm_root = false;  // some T with T^{q+1} = 1
};

/// Scans GF(q^2) for roots of c[0] T^3 + c[1] T^2 + c[2] T + c[3].
CubicRoots cubic_predicates(const Field& f, const std::array<Elem, 4>& c);

/// True for the cases whose condition is also sufficient (1, 9, 10).
bool is_iff_case(int id);

/// Predicate of one summary case, 1..11. Case 7 uses the cubic
/// B^q T^3 + B^q C T^2 + B C^q T + B and case 9 the q = 2 (mod 3) reading
/// with A != 1.
bool summary_case(const Field& f, const Coeffs& c, int id);

/// Case 9 with the alternative q = 1 (mod 3) congruence and no A != 1 clause.
bool summary_case9_alt(const Field& f, const Coeffs& c);

std::vector<int> match_summary_cases(const Field& f, const Coeffs& c);

/// The branch where C6 fails, A B^q + B != 0 and A E^q + E = 0; inside it
/// APN holds exactly when case 9 or case 10 holds.
bool in_c6_iff_branch(const Field& f, const Coeffs& c);

struct Verdict {
  enum class Kind { ExcludedByTheory, CandidateAPN, NecessarilyAPN, NecessarilyNotAPN };
  Kind kind = Kind::ExcludedByTheory;
  std::string reason;      // short tag: "C1", "C2", "C6-iff", "smallest-homogeneous-parts", ...
  std::vector<int> cases;  // deciding or candidate case ids
  bool asymptotic = true;  // result proven for large q, applied at small q
};

std::string to_string(Verdict::Kind k);

Verdict predict_verdict(const Field& f, const Coeffs& c);

struct TheoryReport {
  C1C2 c12;
  bool c6 = false;
  Elem h1;
  bool b_zero_branch = false;  // B = E = 0 and A C^q + D != 0, where p1, p2 apply
  P1P2 p;
  std::map<std::string, bool> cubic_flags;
  std::vector<int> matched_cases;
  bool case9_alt = false;
  Verdict verdict;

  std::string to_json(const Field& f) const;
};

TheoryReport theory_report(const Field& f, const Coeffs& c);

struct Discrepancy {
  Coeffs c;
  bool empirical_apn = false;
  Verdict verdict;
};

struct ReconcileReport {
  std::uint64_t total = 0, empirical_apn = 0;
  std::uint64_t confirmations = 0;
  std::uint64_t small_q_exceptions = 0;  // asymptotic one-sided claims contradicted
  std::uint64_t apn_without_case = 0;    // empirically APN but no case matched
  std::map<std::string, std::uint64_t> iff_violations;  // by reason tag; C1, C2, C6-iff
  std::vector<Discrepancy> samples;                     // first few discrepancies

  /// C = D = 0 part of the C6 branch: APN counts against both case-9 readings.
  struct Case9Table {
    std::uint64_t tuples = 0, apn = 0;
    std::uint64_t agree_prop = 0, agree_alt = 0;  // reading's prediction == empirical
  } case9;

  std::uint64_t iff_violation_total() const;
  /// "proposition", "summary", "both", "neither" or "no-data".
  std::string case9_resolution() const;
  std::string to_json(const Field& f) const;
  void merge(const ReconcileReport& o);
};

/// Counters are merged across contiguous chunks, so the result does not depend
/// on the thread count.
ReconcileReport reconcile(const Field& f, const std::vector<std::pair<Coeffs, bool>>& batch, unsigned threads = 1);

}  // namespace dillon
