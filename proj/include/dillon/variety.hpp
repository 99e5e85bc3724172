#pragma once

// The variety W attached to a Dillon hexanomial: the system F1 = F2 = 0 in
// (X0, X1, Z0, Z1), the X1-eliminated form Gbar and its factor data.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "dillon/errors.hpp"
#include "dillon/mpoly.hpp"

namespace dillon {

MPoly variety_F1(const Field& f, const Coeffs& c);
MPoly variety_F2(const Field& f, const Coeffs& c);
/// (Z0^2 E^q + Z0 D^q + Z1 A^q) F1 + (Z0^2 E + Z0 C + Z1) F2; affine in X1.
MPoly variety_G(const Field& f, const Coeffs& c);
/// The fully expanded closed form of G.
MPoly variety_G_display(const Field& f, const Coeffs& c);

/// Closed-form factors: a2 = g3^2, a0 = g1 g2.
MPoly display_g1(const Field& f, const Coeffs& c);
MPoly display_g2(const Field& f, const Coeffs& c);
MPoly display_g3(const Field& f, const Coeffs& c);

/// Thrown when the X1-coefficient of G vanishes identically. `condition` is
/// "C1", "C2" or "zero" (all coefficients zero).
class DegenerateSystem : public std::runtime_error {
 public:
  explicit DegenerateSystem(std::string condition);
  const std::string& condition() const { return condition_; }

 private:
  std::string condition_;
};

struct VarietyChecks {
  bool g_display = false;          // G equals its expanded closed form
  bool gbar_factorization = false; // Gbar = L X0 (X0 + Z0) (a2 X0^2 + a1 X0 + a0) with derived a's
  bool a1_is_a2_z0 = false;
  bool a2_is_g3_squared = false;
  bool a0_is_g1_g2 = false;
  bool all() const { return g_display && gbar_factorization && a1_is_a2_z0 && a2_is_g3_squared && a0_is_g1_g2; }
};

struct VarietySystem {
  MPoly F1, F2, G, Gbar;
  MPoly L;  // Z0^2 E^q + Z0 D^q + Z1 A^q
  MPoly a2, a1, a0;  // derived from Gbar
  MPoly g1, g2, g3;  // closed forms
  VarietyChecks checks;
};

/// Builds the system and derives Gbar by solving G = 0 for X1 and clearing the
/// denominator in F2. Throws DegenerateSystem under C1, C2 or the zero tuple.
VarietySystem build_variety_system(const Field& f, const Coeffs& c);

/// Forbidden hyperplanes, as a bit set.
enum Hyperplane : unsigned {
  kX0 = 1u << 0,     // X0 = 0
  kX1 = 1u << 1,     // X1 = 0
  kZ0X0 = 1u << 2,   // Z0 = X0
  kZ1X1 = 1u << 3,   // Z1 = X1
  kZ0 = 1u << 4,     // Z0 = 0
  kZ1 = 1u << 5,     // Z1 = 0
  kAllPlanes = 0x3F,
};

struct PointScan {
  std::uint64_t fixed_points = 0;  // phi-fixed points enumerated
  std::uint64_t on_system = 0;     // of those, zeros of every polynomial
  std::uint64_t off_plane = 0;     // of those, outside every forbidden plane
  std::vector<Point> samples;      // first off-plane points
};

/// Largest q scanned without forcing.
inline constexpr std::uint32_t kScanGateQ = 4;

/// Enumerates the phi-fixed points (X0, X0^q, Z0, Z0^q), X0, Z0 in GF(q^2).
/// Throws GateExceeded for q > kScanGateQ unless forced.
PointScan rational_point_scan(const Field& f, const std::vector<MPoly>& system, unsigned forbidden = kAllPlanes,
                              bool force = false, std::size_t max_samples = 8);

enum class GcdRegimeClass { NotApplicable, GcdTrivial, ExceptionalCandidate, GenericObstruction };
std::string to_string(GcdRegimeClass c);

struct GcdRegimeResult {
  GcdRegimeClass cls = GcdRegimeClass::NotApplicable;
  MPoly ell;  // gcd(a2, a0) when computed
  std::uint64_t off_plane = 0;
};

/// Applies when h1 = 0 and B C^q + B^q D != 0. With ell = gcd(a2, a0): trivial
/// ell gives GcdTrivial; otherwise the phi-fixed points of {G = 0, ell = 0}
/// off the six planes decide between ExceptionalCandidate (none) and
/// GenericObstruction.
GcdRegimeResult classify_gcd_regime(const Field& f, const Coeffs& c, bool force = false);

struct GcdRegimeRow {
  Coeffs c;
  GcdRegimeClass cls;
  bool apn = false;
};

struct GcdRegimeCensus {
  std::uint64_t universe = 0;  // tuples visited after the universe filter
  std::uint64_t regime = 0;    // h1 = 0 and B C^q + B^q D != 0
  std::map<std::string, std::uint64_t> by_class, apn_by_class, apn_c_zero_by_class;
  std::vector<GcdRegimeRow> rows;  // regime tuples in index order, when requested

  std::uint64_t apn_with_nontrivial_gcd() const;
  std::string to_json() const;
  void merge(const GcdRegimeCensus& o);
};

/// Classifies every regime tuple of the field. `filtered` restricts the
/// universe to A != 0 outside C1 and C2. Throws GateExceeded for
/// q > kScanGateQ unless forced.
GcdRegimeCensus gcd_regime_census(const Field& f, bool filtered, unsigned threads = 1, bool keep_rows = false,
                               bool force = false);

struct ResultantCheck {
  MPoly g1L, g2L, g3L;  // closed forms of the lowest homogeneous parts
  bool lowest_parts_match = false;  // closed forms are the degree 1, 3, 2 parts of g1, g2, g3, nothing lower
  MPoly resultant;      // Res_{Z0}(g1L, g2L), formal degrees 1 and 3
  MPoly expected;       // (A^q B + B^q)^2 h1 Z1^3
  bool identity_holds = false;
};

ResultantCheck lowest_part_resultant_check(const Field& f, const Coeffs& c);

/// Closed forms for B = 0, D = A C^q: Gbar = X0 (X0 + Z0) (A^q C Z0 + A^q Z1 + E^q Z0^2) (b2 X0^2 + b1 X0 + b0).
MPoly display_b2(const Field& f, const Coeffs& c);
MPoly display_b0(const Field& f, const Coeffs& c);

}  // namespace dillon
