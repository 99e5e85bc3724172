#include "dillon/variety.hpp"

#include <sstream>
#include <thread>

#include "dillon/diffanalysis.hpp"
#include "json.hpp"

#include "dillon/theory.hpp"

namespace dillon {

namespace {

constexpr const char* kF1 =
    "(AZ0 + Z1^2E + Z1D)X0^2 + (Z0^2A + Z1^2C + Z1B)X0 + (Z0^2E + Z0C + Z1)X1^2 + (Z0^2D + Z0B + Z1^2)X1";
constexpr const char* kF2 =
    "(A^qZ1 + Z0^2E^q + Z0D^q)X1^2 + (Z1^2A^q + Z0^2C^q + Z0B^q)X1 + (Z1^2E^q + Z1C^q + Z0)X0^2 + "
    "(Z1^2D^q + Z1B^q + Z0^2)X0";
constexpr const char* kL = "Z0^2E^q + Z0D^q + Z1A^q";
constexpr const char* kM = "Z0^2E + Z0C + Z1";

constexpr const char* kG =
    "(Z0^3AE^q + Z0^3E + Z0^2Z1C^qE + Z0^2Z1DE^q + Z0^2AD^q + Z0^2C + Z0Z1^2CE^q + Z0Z1^2D^qE + Z0Z1A^{q+1} + "
    "Z0Z1C^{q+1} + Z0Z1D^{q+1} + Z0Z1 + Z1^3A^qE + Z1^3E^q + Z1^2A^qD + Z1^2C^q)X0^2"
    " + (Z0^4AE^q + Z0^4E + Z0^3AD^q + Z0^3C + Z0^2Z1^2CE^q + Z0^2Z1^2D^qE + Z0^2Z1A^{q+1} + Z0^2Z1BE^q + "
    "Z0^2Z1B^qE + Z0^2Z1 + Z0Z1BD^q + Z0Z1B^qC + Z1^3A^qC + Z1^3D^q + Z1^2A^qB + Z1^2B^q)X0"
    " + (Z0^4C^qE + Z0^4DE^q + Z0^3BE^q + Z0^3B^qE + Z0^3C^{q+1} + Z0^3D^{q+1} + Z0^2Z1^2A^qE + Z0^2Z1^2E^q + "
    "Z0^2Z1A^qD + Z0^2Z1C^q + Z0^2BD^q + Z0^2B^qC + Z0Z1^2A^qC + Z0Z1^2D^q + Z0Z1A^qB + Z0Z1B^q)X1";

constexpr const char* kG3 =
    "Z0^3AE^q + Z0^3E + Z0^2Z1C^qE + Z0^2Z1DE^q + Z0^2AD^q + Z0^2C + Z0Z1^2CE^q + Z0Z1^2D^qE + Z0Z1A^{q+1} + "
    "Z0Z1C^{q+1} + Z0Z1D^{q+1} + Z0Z1 + Z1^3A^qE + Z1^3E^q + Z1^2A^qD + Z1^2C^q";
constexpr const char* kG1 =
    "Z0^3C^qE + Z0^3DE^q + Z0^2BE^q + Z0^2B^qE + Z0^2C^{q+1} + Z0^2D^{q+1} + Z0Z1^2A^qE + Z0Z1^2E^q + Z0Z1A^qD + "
    "Z0Z1C^q + Z0BD^q + Z0B^qC + Z1^2A^qC + Z1^2D^q + Z1A^qB + Z1B^q";
constexpr const char* kG2 =
    "Z0^4AC^q + Z0^4D + Z0^3AB^q + Z0^3B + Z0^2Z1^2A^{q+1} + Z0^2Z1^2C^{q+1} + Z0^2Z1^2D^{q+1} + Z0^2Z1^2 + "
    "Z0^2Z1BC^q + Z0^2Z1B^qD + Z0Z1^2BD^q + Z0Z1^2B^qC + Z1^4A^qC + Z1^4D^q + Z1^3A^qB + Z1^3B^q";

constexpr const char* kG1L = "(A^qB + B^q)Z1 + (BD^q + B^qC)Z0";
constexpr const char* kG2L =
    "(AB^q + B)Z0^3 + (BC^q + B^qD)Z0^2Z1 + (BD^q + B^qC)Z0Z1^2 + (A^qB + B^q)Z1^3";
constexpr const char* kG3L = "(AD^q + C)Z0^2 + (A^{q+1} + C^{q+1} + D^{q+1} + 1)Z0Z1 + (A^qD + C^q)Z1^2";

constexpr const char* kB2 =
    "((A^{q+1} + 1)(C^{q+1} + 1)Z0Z1 + C(A^{q+1} + 1)Z0^2 + C^q(A^{q+1} + 1)Z1^2 + C^q(AE^q + E)Z0^2Z1 + "
    "C(A^qE + E^q)Z0Z1^2 + (AE^q + E)Z0^3 + (A^qE + E^q)Z1^3)^2";
constexpr const char* kB0 =
    "(A^{q+1} + 1)(C^{q+1} + 1)Z0^3Z1^2((A^{q+1} + 1)C^{q+1}Z0 + (A^{q+1} + 1)C^qZ1 + (AE^q + E)C^qZ0^2 + "
    "(A^qE + E^q)Z1^2)";

MPoly P(const Field& f, const Coeffs& c, const char* text) { return parse_mpoly(f, c, text); }

}  // namespace

MPoly variety_F1(const Field& f, const Coeffs& c) { return P(f, c, kF1); }
MPoly variety_F2(const Field& f, const Coeffs& c) { return P(f, c, kF2); }
MPoly variety_G(const Field& f, const Coeffs& c) {
  return P(f, c, kL) * variety_F1(f, c) + P(f, c, kM) * variety_F2(f, c);
}
MPoly variety_G_display(const Field& f, const Coeffs& c) { return P(f, c, kG); }
MPoly display_g1(const Field& f, const Coeffs& c) { return P(f, c, kG1); }
MPoly display_g2(const Field& f, const Coeffs& c) { return P(f, c, kG2); }
MPoly display_g3(const Field& f, const Coeffs& c) { return P(f, c, kG3); }
MPoly display_b2(const Field& f, const Coeffs& c) { return P(f, c, kB2); }
MPoly display_b0(const Field& f, const Coeffs& c) { return P(f, c, kB0); }

DegenerateSystem::DegenerateSystem(std::string condition)
    : std::runtime_error("the X1-coefficient of G vanishes identically (condition " + condition + ")"),
      condition_(std::move(condition)) {}

VarietySystem build_variety_system(const Field& f, const Coeffs& c) {
  VarietySystem s;
  s.F1 = variety_F1(f, c);
  s.F2 = variety_F2(f, c);
  s.L = P(f, c, kL);
  s.G = s.L * s.F1 + P(f, c, kM) * s.F2;
  if (s.G.degree_in(Var::X1) > 1) throw std::logic_error("G is not affine in X1");

  const MPoly gx1 = s.G.coefficient_in(Var::X1, 1), grest = s.G.coefficient_in(Var::X1, 0);
  if (gx1.is_zero()) {
    const auto c12 = cond_C1_C2(f, c);
    throw DegenerateSystem(c12.c1 ? "C1" : c12.c2 ? "C2" : "zero");
  }
  s.checks.g_display = s.G == variety_G_display(f, c);

  // X1 = grest / gx1 substituted into F2 = p2 X1^2 + p1 X1 + p0, times gx1^2.
  const MPoly p2 = s.F2.coefficient_in(Var::X1, 2), p1 = s.F2.coefficient_in(Var::X1, 1),
              p0 = s.F2.coefficient_in(Var::X1, 0);
  s.Gbar = p2 * grest * grest + p1 * grest * gx1 + p0 * gx1 * gx1;

  s.g1 = display_g1(f, c);
  s.g2 = display_g2(f, c);
  s.g3 = display_g3(f, c);

  const MPoly x0 = MPoly::var(f, Var::X0), z0 = MPoly::var(f, Var::Z0);
  if (s.L.is_zero()) {
    // A = D = E = 0: Gbar vanishes and the quadratic is taken from the closed forms.
    s.a2 = s.g3 * s.g3;
    s.a1 = s.a2 * z0;
    s.a0 = s.g1 * s.g2;
    s.checks.gbar_factorization = s.Gbar.is_zero();
  } else if (const auto quad = exact_div(s.Gbar, s.L * x0 * (x0 + z0)); quad && quad->degree_in(Var::X0) <= 2) {
    s.a2 = quad->coefficient_in(Var::X0, 2);
    s.a1 = quad->coefficient_in(Var::X0, 1);
    s.a0 = quad->coefficient_in(Var::X0, 0);
    s.checks.gbar_factorization = true;
  }
  s.checks.a1_is_a2_z0 = s.checks.gbar_factorization && s.a1 == s.a2 * z0;
  s.checks.a2_is_g3_squared = s.checks.gbar_factorization && s.a2 == s.g3 * s.g3;
  s.checks.a0_is_g1_g2 = s.checks.gbar_factorization && s.a0 == s.g1 * s.g2;
  return s;
}

PointScan rational_point_scan(const Field& f, const std::vector<MPoly>& system, unsigned forbidden, bool force,
                              std::size_t max_samples) {
  const std::uint64_t n = f.size();
  if (f.q() > kScanGateQ && !force) {
    std::ostringstream os;
    os << "point scan over q = " << f.q() << " visits " << n * n << " phi-fixed points and evaluates "
       << system.size() << " polynomials at each; the gate allows q <= " << kScanGateQ
       << ", pass --force-gate to override";
    throw GateExceeded(os.str());
  }
  PointScan r;
  for (std::uint32_t x = 0; x < n; ++x)
    for (std::uint32_t z = 0; z < n; ++z) {
      const Elem X0{x}, Z0{z};
      const Point p{X0, f.frob(X0), Z0, f.frob(Z0)};
      ++r.fixed_points;
      bool zero = true;
      for (const auto& poly : system)
        if (poly.eval(p)) {
          zero = false;
          break;
        }
      if (!zero) continue;
      ++r.on_system;
      const bool on_plane = ((forbidden & kX0) && !p[0]) || ((forbidden & kX1) && !p[1]) ||
                            ((forbidden & kZ0X0) && p[2] == p[0]) || ((forbidden & kZ1X1) && p[3] == p[1]) ||
                            ((forbidden & kZ0) && !p[2]) || ((forbidden & kZ1) && !p[3]);
      if (on_plane) continue;
      ++r.off_plane;
      if (r.samples.size() < max_samples) r.samples.push_back(p);
    }
  return r;
}

std::string to_string(GcdRegimeClass c) {
  switch (c) {
    case GcdRegimeClass::NotApplicable: return "NotApplicable";
    case GcdRegimeClass::GcdTrivial: return "GcdTrivial";
    case GcdRegimeClass::ExceptionalCandidate: return "ExceptionalCandidate";
    case GcdRegimeClass::GenericObstruction: return "GenericObstruction";
  }
  return "?";
}

GcdRegimeResult classify_gcd_regime(const Field& f, const Coeffs& c, bool force) {
  GcdRegimeResult r;
  const Elem bcd = f.mul(c.B, f.frob(c.C)) + f.mul(f.frob(c.B), c.D);
  if (h1_value(f, c) || !bcd) return r;
  const auto s = build_variety_system(f, c);
  r.ell = gcd_bivariate(s.a2, s.a0);
  if (r.ell.total_degree() <= 0) {
    r.cls = GcdRegimeClass::GcdTrivial;
    return r;
  }
  const auto scan = rational_point_scan(f, {s.G, r.ell}, kAllPlanes, force, 0);
  r.off_plane = scan.off_plane;
  r.cls = scan.off_plane ? GcdRegimeClass::GenericObstruction : GcdRegimeClass::ExceptionalCandidate;
  return r;
}

std::uint64_t GcdRegimeCensus::apn_with_nontrivial_gcd() const {
  std::uint64_t n = 0;
  for (const auto& [k, v] : apn_by_class)
    if (k != to_string(GcdRegimeClass::GcdTrivial)) n += v;
  return n;
}

std::string GcdRegimeCensus::to_json() const {
  nlohmann::json j{{"universe", universe},
                   {"regime", regime},
                   {"by_class", by_class},
                   {"apn_by_class", apn_by_class},
                   {"apn_c_zero_by_class", apn_c_zero_by_class},
                   {"apn_with_nontrivial_gcd", apn_with_nontrivial_gcd()}};
  return j.dump(2);
}

void GcdRegimeCensus::merge(const GcdRegimeCensus& o) {
  universe += o.universe;
  regime += o.regime;
  for (const auto& [k, v] : o.by_class) by_class[k] += v;
  for (const auto& [k, v] : o.apn_by_class) apn_by_class[k] += v;
  for (const auto& [k, v] : o.apn_c_zero_by_class) apn_c_zero_by_class[k] += v;
  rows.insert(rows.end(), o.rows.begin(), o.rows.end());
}

GcdRegimeCensus gcd_regime_census(const Field& f, bool filtered, unsigned threads, bool keep_rows, bool force) {
  if (f.q() > kScanGateQ && !force) {
    std::ostringstream os;
    os << "census over q = " << f.q() << " classifies up to " << std::uint64_t{f.size()} * f.size() * f.size() *
                                                                     f.size() * f.size()
       << " tuples; the gate allows q <= " << kScanGateQ << ", pass --force-gate to override";
    throw GateExceeded(os.str());
  }
  std::uint64_t n = 1;
  for (int i = 0; i < 5; ++i) n *= f.size();
  threads = std::max(1u, threads);
  std::vector<GcdRegimeCensus> parts(threads);
  auto work = [&](unsigned t) {
    auto& out = parts[t];
    for (std::uint64_t i = n * t / threads; i < n * (t + 1) / threads; ++i) {
      const Coeffs c = tuple_at(f, i);
      if (filtered) {
        const auto c12 = cond_C1_C2(f, c);
        if (!c.A || c12.c1 || c12.c2) continue;
      }
      ++out.universe;
      const auto r = classify_gcd_regime(f, c, true);
      if (r.cls == GcdRegimeClass::NotApplicable) continue;
      ++out.regime;
      const std::string k = to_string(r.cls);
      ++out.by_class[k];
      const bool apn = is_apn_ddt(f, c);
      if (apn) {
        ++out.apn_by_class[k];
        if (!c.C) ++out.apn_c_zero_by_class[k];
      }
      if (keep_rows) out.rows.push_back({c, r.cls, apn});
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work, t);
  work(0);
  for (auto& th : pool) th.join();
  GcdRegimeCensus total;
  for (const auto& p : parts) total.merge(p);
  return total;
}

ResultantCheck lowest_part_resultant_check(const Field& f, const Coeffs& c) {
  ResultantCheck r;
  r.g1L = P(f, c, kG1L);
  r.g2L = P(f, c, kG2L);
  r.g3L = P(f, c, kG3L);
  auto only_from = [](const MPoly& p, unsigned d, const MPoly& part) {
    for (unsigned k = 0; k < d; ++k)
      if (!p.homogeneous_part(k).is_zero()) return false;
    return p.homogeneous_part(d) == part;
  };
  r.lowest_parts_match = only_from(display_g1(f, c), 1, r.g1L) && only_from(display_g2(f, c), 3, r.g2L) &&
                         only_from(display_g3(f, c), 2, r.g3L);
  r.resultant = resultant_z0(r.g1L, r.g2L, 1, 3);
  const Elem k = f.mul(c.B, f.frob(c.A)) + f.frob(c.B);
  r.expected = MPoly::monomial(f, f.mul(f.sqr(k), h1_value(f, c)), {0, 0, 0, 3});
  r.identity_holds = r.resultant == r.expected;
  return r;
}

}  // namespace dillon
