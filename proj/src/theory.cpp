#include "dillon/theory.hpp"

#include <algorithm>
#include <thread>

#include "json.hpp"

namespace dillon {

namespace {

// Frequently used quantities for one tuple.
struct Ctx {
  const Field& f;
  Elem A, B, C, D, E;
  Elem Aq, Bq, Cq, Dq, Eq;
  std::uint64_t q;

  Ctx(const Field& fld, const Coeffs& c)
      : f(fld), A(c.A), B(c.B), C(c.C), D(c.D), E(c.E),
        Aq(fld.frob(c.A)), Bq(fld.frob(c.B)), Cq(fld.frob(c.C)), Dq(fld.frob(c.D)), Eq(fld.frob(c.E)), q(fld.q()) {}

  Elem m(Elem a, Elem b) const { return f.mul(a, b); }
  Elem m(Elem a, Elem b, Elem c) const { return f.mul(f.mul(a, b), c); }
  Elem m(Elem a, Elem b, Elem c, Elem d) const { return f.mul(f.mul(a, b), f.mul(c, d)); }
  Elem p(Elem a, std::uint64_t e) const { return f.pow(a, e); }
  Elem norm(Elem a) const { return f.mul(a, f.frob(a)); }

  Elem AEq_E() const { return m(A, Eq) + E; }     // A E^q + E
  Elem ABq_B() const { return m(A, Bq) + B; }     // A B^q + B
  Elem ACq_D() const { return m(A, Cq) + D; }     // A C^q + D
  Elem ADq_C() const { return m(A, Dq) + C; }     // A D^q + C
  Elem BCq_BqD() const { return m(B, Cq) + m(Bq, D); }
  Elem N() const { return norm(A) + norm(C) + norm(D) + f.one(); }
  bool a_unit() const { return norm(A) == f.one(); }
};

CubicRoots c6_cubic(const Ctx& x) { return cubic_predicates(x.f, {x.f.one(), x.m(x.A, x.Dq), x.D, x.A}); }
CubicRoots c7_cubic(const Ctx& x) { return cubic_predicates(x.f, {x.Bq, x.m(x.Bq, x.C), x.m(x.B, x.Cq), x.B}); }
CubicRoots b0_cubic(const Ctx& x) { return cubic_predicates(x.f, {x.f.one(), x.C, x.m(x.A, x.Cq), x.A}); }

bool q_is_2_mod_3(const Field& f) { return f.m() % 2 == 1; }

bool case9_core(const Ctx& x) {
  return !x.C && !x.D && x.a_unit() && !x.AEq_E() && x.ABq_B();
}

}  // namespace

C1C2 cond_C1_C2(const Field& f, const Coeffs& c) {
  const Ctx x(f, c);
  C1C2 r;
  if (!x.A) return r;
  const bool bq = x.m(x.Aq, x.B) == x.Bq;
  const bool eq = x.m(x.Aq, x.E) == x.Eq;
  r.c1 = !x.C && !x.D && bq && eq;
  r.c2 = x.C && x.D && x.a_unit() && x.D == x.m(x.A, x.Cq) && bq && eq;
  return r;
}

bool cond_C6(const Field& f, const Coeffs& c) {
  const Ctx x(f, c);
  return x.ADq_C() || x.N();
}

Elem h1_value(const Field& f, const Coeffs& c) {
  const Ctx x(f, c);
  const Elem B2 = f.sqr(x.B), B2q = f.sqr(x.Bq), nB = x.norm(x.B);
  return x.m(x.norm(x.A), nB) + x.m(x.A, B2q) + x.m(x.Aq, B2) + x.m(B2, x.Cq, x.Dq) + x.m(nB, x.norm(x.C)) +
         x.m(nB, x.norm(x.D)) + nB + x.m(B2q, x.C, x.D);
}

P1P2 p1_p2_values(const Field& f, const Coeffs& c) {
  const Ctx x(f, c);
  const std::uint64_t q = x.q;
  const Elem A = x.A, C = x.C, D = x.D, Cq = x.Cq, Dq = x.Dq;
  const Elem nA = x.norm(A), nC = x.norm(C), nD = x.norm(D), one = f.one();
  const Elem C2q = f.sqr(Cq), D2q = f.sqr(Dq);

  P1P2 r;
  r.p1 = x.m(x.p(A, q + 2), Cq) + x.m(f.sqr(A), D2q) + x.m(nA, D) + x.m(A, C2q, C) + x.m(A, Cq, nD) + x.m(A, Cq) +
         f.sqr(C) + x.m(nC, D) + x.m(nD, D) + D;

  const Elem inner = x.m(x.p(A, q + 2), x.m(C, D2q) + x.m(Cq, Dq)) + x.m(f.sqr(A), x.p(Dq, 3)) +
                     x.m(A, x.m(C2q, C, Dq) + x.p(Cq, 3) + x.m(Cq, D2q, D) + x.m(Cq, Dq)) + x.m(f.sqr(C), Dq);
  const Elem tr = f.trace_norm_rel(inner).first;
  if (!f.in_subfield(tr)) throw std::logic_error("relative trace left GF(q)");
  const Elem nC2 = f.sqr(nC), nD2 = f.sqr(nD);
  r.p2 = x.m(f.sqr(nA), nC) + x.m(nA, x.m(nC, nD) + nC + nD + nD2 + one) + x.m(nC2, nC) + nC2 + x.m(nC, nD) +
         x.m(nD2, nD) + x.m(nC2, nD) + x.m(nC, nD2) + tr;
  return r;
}

CubicRoots cubic_predicates(const Field& f, const std::array<Elem, 4>& c) {
  CubicRoots r;
  for (std::uint32_t i = 0; i < f.size(); ++i) {
    const Elem t{i};
    const Elem v = f.mul(f.mul(f.mul(c[0], t) + c[1], t) + c[2], t) + c[3];
    if (v) continue;
    r.has_root = true;
    if (t && f.mul(t, f.frob(t)) == f.one()) r.has_unit_norm_root = true;
  }
  return r;
}

bool is_iff_case(int id) { return id == 1 || id == 9 || id == 10; }

bool summary_case(const Field& f, const Coeffs& c, int id) {
  const Ctx x(f, c);
  switch (id) {
    case 1:
      return cond_C1_C2(f, c).c1 && !x.a_unit();
    case 2:
      return !x.B && !x.ACq_D() && x.AEq_E() && !x.m(x.norm(x.A) + f.one(), x.norm(x.C) + f.one());
    case 3:
      return !x.B && !x.E && x.ACq_D() && !x.N() && x.p(x.ACq_D(), x.q - 1) == x.p(x.ADq_C(), 2 * (x.q - 1));
    case 4: {
      if (x.B || x.E || !x.ACq_D() || !x.N() || x.C == x.m(x.A, x.Dq)) return false;
      const auto p = p1_p2_values(f, c);
      return !f.mul(p.p1, p.p2);
    }
    case 5:
      return !h1_value(f, c) && x.BCq_BqD() && x.Cq == x.m(x.Aq, x.B) + x.m(x.Aq, x.D) + x.Bq &&
             !(x.norm(x.B) + x.norm(x.D) + x.m(x.B, x.Dq) + x.m(x.Bq, x.D) + f.one());
    case 6:
      return !h1_value(f, c) && x.BCq_BqD() && !x.E;
    case 7:
      return !h1_value(f, c) && !x.BCq_BqD() && x.B == x.m(x.Bq, x.A) && x.m(x.B, x.Eq) + x.m(x.Bq, x.E) &&
             !c7_cubic(x).has_root;
    case 8: {
      const Elem k = x.AEq_E();
      if (x.m(x.A, x.Dq) != x.C || !x.m(x.ABq_B(), k) || x.norm(x.D) != f.one() || x.a_unit() ||
          x.m(x.B, x.Eq) != x.m(x.Bq, x.E))
        return false;
      return f.pow(k, x.q * x.q - x.q) == f.mul(x.D, f.sqrt(x.D));
    }
    case 9:
      return case9_core(x) && q_is_2_mod_3(f) && x.A != f.one();
    case 10:
      return x.C == x.m(x.A, x.Dq) && x.a_unit() && !x.AEq_E() && x.ABq_B() && x.D && x.norm(x.D) != f.one() &&
             !c6_cubic(x).has_root;
    case 11:
      return x.a_unit() && x.m(x.A, x.Dq) == x.C && x.m(x.B, x.AEq_E()) && !x.ABq_B() && !c6_cubic(x).has_root;
    default:
      throw std::out_of_range("summary case id must be 1..11, got " + std::to_string(id));
  }
}

bool summary_case9_alt(const Field& f, const Coeffs& c) {
  return case9_core(Ctx(f, c)) && !q_is_2_mod_3(f);
}

std::vector<int> match_summary_cases(const Field& f, const Coeffs& c) {
  std::vector<int> ids;
  for (int id = 1; id <= 11; ++id)
    if (summary_case(f, c, id)) ids.push_back(id);
  return ids;
}

bool in_c6_iff_branch(const Field& f, const Coeffs& c) {
  const Ctx x(f, c);
  return !cond_C6(f, c) && x.ABq_B() && !x.AEq_E();
}

std::string to_string(Verdict::Kind k) {
  switch (k) {
    case Verdict::Kind::ExcludedByTheory: return "ExcludedByTheory";
    case Verdict::Kind::CandidateAPN: return "CandidateAPN";
    case Verdict::Kind::NecessarilyAPN: return "NecessarilyAPN";
    case Verdict::Kind::NecessarilyNotAPN: return "NecessarilyNotAPN";
  }
  return "?";
}

Verdict predict_verdict(const Field& f, const Coeffs& c) {
  using K = Verdict::Kind;
  const Ctx x(f, c);
  const auto c12 = cond_C1_C2(f, c);
  if (c12.c1) {
    if (!x.a_unit()) return {K::NecessarilyAPN, "C1", {1}};
    return {K::NecessarilyNotAPN, "C1", {}};
  }
  if (c12.c2) return {K::NecessarilyNotAPN, "C2", {}};
  if (in_c6_iff_branch(f, c)) {
    std::vector<int> ids;
    for (int id : {9, 10})
      if (summary_case(f, c, id)) ids.push_back(id);
    return {ids.empty() ? K::NecessarilyNotAPN : K::NecessarilyAPN, "C6-iff", ids};
  }
  auto ids = match_summary_cases(f, c);
  if (!ids.empty()) return {K::CandidateAPN, "cases", ids};

  std::string tag;
  if (!x.B) tag = "b-zero";
  else if (!cond_C6(f, c)) tag = "c6-fails";
  else if (h1_value(f, c)) tag = "smallest-homogeneous-parts";
  else if (x.BCq_BqD()) tag = "h1-vanishes";
  else tag = "h1-vanishes-degenerate";
  return {K::ExcludedByTheory, tag, {}};
}

TheoryReport theory_report(const Field& f, const Coeffs& c) {
  const Ctx x(f, c);
  TheoryReport r;
  r.c12 = cond_C1_C2(f, c);
  r.c6 = cond_C6(f, c);
  r.h1 = h1_value(f, c);
  r.b_zero_branch = !x.B && !x.E && x.ACq_D();
  r.p = p1_p2_values(f, c);
  const auto b0 = b0_cubic(x), c6 = c6_cubic(x), c7 = c7_cubic(x);
  r.cubic_flags = {{"b0_cubic_has_unit_norm_root", b0.has_unit_norm_root},
                   {"c6_cubic_has_root", c6.has_root},
                   {"c7_cubic_has_root", c7.has_root}};
  r.matched_cases = match_summary_cases(f, c);
  r.case9_alt = summary_case9_alt(f, c);
  r.verdict = predict_verdict(f, c);
  return r;
}

std::string TheoryReport::to_json(const Field& f) const {
  nlohmann::json j;
  j["c1"] = c12.c1;
  j["c2"] = c12.c2;
  j["c6"] = c6;
  j["h1"] = f.format(h1);
  j["h1_zero"] = h1.is_zero();
  j["b_zero_branch"] = b_zero_branch;
  j["p1"] = f.format(p.p1);
  j["p2"] = f.format(p.p2);
  for (const auto& [k, v] : cubic_flags) j["cubic"][k] = v;
  j["matched_cases"] = matched_cases;
  j["case9_alt_reading"] = case9_alt;
  j["verdict"] = {{"kind", to_string(verdict.kind)},
                  {"reason", verdict.reason},
                  {"cases", verdict.cases},
                  {"asymptotic", verdict.asymptotic}};
  return j.dump();
}

std::uint64_t ReconcileReport::iff_violation_total() const {
  std::uint64_t n = 0;
  for (const auto& [k, v] : iff_violations) n += v;
  return n;
}

std::string ReconcileReport::case9_resolution() const {
  if (!case9.tuples) return "no-data";
  const bool p = case9.agree_prop == case9.tuples, s = case9.agree_alt == case9.tuples;
  return p && s ? "both" : p ? "proposition" : s ? "summary" : "neither";
}

namespace {

constexpr std::size_t kSamples = 20;

ReconcileReport reconcile_range(const Field& f, const std::pair<Coeffs, bool>* first,
                                const std::pair<Coeffs, bool>* last) {
  using K = Verdict::Kind;
  ReconcileReport r;
  for (; first != last; ++first) {
    const auto& [c, apn] = *first;
    ++r.total;
    r.empirical_apn += apn;
    const auto v = predict_verdict(f, c);
    bool ok = true;
    switch (v.kind) {
      case K::NecessarilyAPN:
      case K::NecessarilyNotAPN:
        ok = apn == (v.kind == K::NecessarilyAPN);
        if (!ok) ++r.iff_violations[v.reason];
        break;
      case K::CandidateAPN:
        break;
      case K::ExcludedByTheory:
        ok = !apn;
        if (!ok) ++r.small_q_exceptions;
        break;
    }
    if (ok) ++r.confirmations;
    else if (r.samples.size() < kSamples) r.samples.push_back({c, apn, v});
    if (apn && match_summary_cases(f, c).empty()) ++r.apn_without_case;

    if (in_c6_iff_branch(f, c) && !c.C && !c.D) {
      ++r.case9.tuples;
      r.case9.apn += apn;
      r.case9.agree_prop += summary_case(f, c, 9) == apn;
      r.case9.agree_alt += summary_case9_alt(f, c) == apn;
    }
  }
  return r;
}

}  // namespace

void ReconcileReport::merge(const ReconcileReport& o) {
  total += o.total;
  empirical_apn += o.empirical_apn;
  confirmations += o.confirmations;
  small_q_exceptions += o.small_q_exceptions;
  apn_without_case += o.apn_without_case;
  for (const auto& [k, v] : o.iff_violations) iff_violations[k] += v;
  for (const auto& d : o.samples)
    if (samples.size() < kSamples) samples.push_back(d);
  case9.tuples += o.case9.tuples;
  case9.apn += o.case9.apn;
  case9.agree_prop += o.case9.agree_prop;
  case9.agree_alt += o.case9.agree_alt;
}

ReconcileReport reconcile(const Field& f, const std::vector<std::pair<Coeffs, bool>>& batch, unsigned threads) {
  threads = std::max(1u, std::min<unsigned>(threads, std::max<std::size_t>(1, batch.size())));
  std::vector<ReconcileReport> parts(threads);
  std::vector<std::thread> pool;
  const std::size_t n = batch.size();
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      const auto* base = batch.data();
      parts[t] = reconcile_range(f, base + n * t / threads, base + n * (t + 1) / threads);
    });
  for (auto& th : pool) th.join();
  ReconcileReport r;
  for (const auto& p : parts) r.merge(p);
  return r;
}

std::string ReconcileReport::to_json(const Field& f) const {
  nlohmann::json j;
  j["field"] = format_field_spec(f.spec());
  j["total"] = total;
  j["empirical_apn"] = empirical_apn;
  j["confirmations"] = confirmations;
  j["small_q_exceptions"] = small_q_exceptions;
  j["apn_without_case"] = apn_without_case;
  j["iff_violations"] = nlohmann::json::object();
  for (const auto& [k, v] : iff_violations) j["iff_violations"][k] = v;
  j["iff_violation_total"] = iff_violation_total();
  j["case9"] = {{"tuples", case9.tuples},
                {"apn", case9.apn},
                {"agree_proposition_reading", case9.agree_prop},
                {"agree_summary_reading", case9.agree_alt},
                {"resolution", case9_resolution()}};
  auto& s = j["samples"] = nlohmann::json::array();
  for (const auto& d : samples)
    s.push_back({{"tuple", format_coeffs(f, d.c)},
                 {"apn", d.empirical_apn},
                 {"verdict", to_string(d.verdict.kind)},
                 {"reason", d.verdict.reason}});
  return j.dump();
}

}  // namespace dillon
