#include "dillon/diffanalysis.hpp"

#include <algorithm>

namespace dillon {

Table ddt(const Lut& f) {
  const auto n = static_cast<std::uint32_t>(f.size());
  Table t(n, std::vector<std::uint32_t>(n, 0));
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t x = 0; x < n; ++x) ++t[a][(f[x ^ a] + f[x]).bits];
  return t;
}

Table ddt(const Field& field, const Coeffs& c) { return ddt(truth_table(field, c)); }

DiffProfile diff_profile(const Lut& f) {
  const auto n = static_cast<std::uint32_t>(f.size());
  DiffProfile p;
  std::vector<std::uint32_t> row(n);
  for (std::uint32_t a = 1; a < n; ++a) {
    std::fill(row.begin(), row.end(), 0);
    for (std::uint32_t x = 0; x < n; ++x) ++row[(f[x ^ a] + f[x]).bits];
    for (const auto v : row) {
      ++p.spectrum[v];
      p.uniformity = std::max(p.uniformity, v);
    }
  }
  p.is_apn = p.uniformity == 2;
  p.is_permutation = is_permutation(f);
  return p;
}

DiffProfile diff_profile(const Field& field, const Coeffs& c) { return diff_profile(truth_table(field, c)); }

bool is_apn_ddt(const Lut& f) {
  const auto n = static_cast<std::uint32_t>(f.size());
  // Stamp array: seen[b] == a marks b as already hit in row a, so rows need no clearing.
  std::vector<std::uint32_t> seen(n, 0);
  for (std::uint32_t a = 1; a < n; ++a) {
    for (std::uint32_t x = 0; x < n; ++x) {
      if ((x ^ a) < x) continue;  // x and x+a give the same b
      const auto b = (f[x ^ a] + f[x]).bits;
      if (seen[b] == a) return false;
      seen[b] = a;
    }
  }
  return true;
}

bool is_apn_ddt(const Field& field, const Coeffs& c) { return is_apn_ddt(truth_table(field, c)); }

bool is_apn_equation(const Field& field, const Coeffs& c) {
  const std::uint32_t n = field.size();
  const Elem A = c.A, B = c.B, C = c.C, D = c.D, E = c.E;
  std::vector<Elem> sq(n), fq(n), fq2(n);
  for (std::uint32_t z = 0; z < n; ++z) {
    sq[z] = field.sqr(Elem{z});
    fq[z] = field.frob(Elem{z});
    fq2[z] = field.sqr(fq[z]);
  }
  for (std::uint32_t ai = 1; ai < n; ++ai) {
    const Elem a{ai}, a2 = sq[ai], aq = fq[ai], a2q = fq2[ai];
    const Elem k2 = field.mul(A, a) + field.mul(a2q, E) + field.mul(aq, D);
    const Elem k1 = field.mul(a2, A) + field.mul(a2q, C) + field.mul(aq, B);
    const Elem k2q = field.mul(a2, E) + field.mul(a, C) + aq;
    const Elem kq = field.mul(a2, D) + field.mul(a, B) + a2q;
    for (std::uint32_t x = 1; x < n; ++x) {
      if (x == ai) continue;
      const Elem v = field.mul(k2, sq[x]) + field.mul(k1, Elem{x}) + field.mul(k2q, fq2[x]) + field.mul(kq, fq[x]);
      if (v.is_zero()) return false;
    }
  }
  return true;
}

bool is_permutation(const Lut& f) {
  std::vector<bool> hit(f.size(), false);
  for (const auto y : f) {
    if (hit[y.bits]) return false;
    hit[y.bits] = true;
  }
  return true;
}

bool is_permutation(const Field& field, const Coeffs& c) { return is_permutation(truth_table(field, c)); }

void write_ddt_csv(std::ostream& os, const Table& t) {
  for (const auto& row : t) {
    for (std::size_t b = 0; b < row.size(); ++b) os << (b ? "," : "") << row[b];
    os << '\n';
  }
}

}  // namespace dillon
