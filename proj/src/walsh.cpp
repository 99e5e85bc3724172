#include "dillon/walsh.hpp"

#include <cstdlib>
#include <sstream>

namespace dillon {

namespace {

// Tr(a x) = <mask(a), x> for the coordinate dot product; mask is GF(2)-linear in a.
std::vector<std::uint32_t> trace_masks(const Field& field) {
  const unsigned n = field.degree();
  std::vector<std::uint32_t> basis(n, 0);
  for (unsigned j = 0; j < n; ++j)
    for (unsigned i = 0; i < n; ++i)
      basis[j] |= field.abs_trace(field.mul(Elem{1u << j}, Elem{1u << i})) << i;
  std::vector<std::uint32_t> masks(field.size(), 0);
  for (std::uint32_t a = 1; a < field.size(); ++a) {
    const unsigned low = static_cast<unsigned>(__builtin_ctz(a));
    masks[a] = masks[a & (a - 1)] ^ basis[low];
  }
  return masks;
}

void fwht(std::vector<std::int32_t>& v) {
  for (std::size_t h = 1; h < v.size(); h <<= 1)
    for (std::size_t i = 0; i < v.size(); i += 2 * h)
      for (std::size_t j = i; j < i + h; ++j) {
        const auto x = v[j], y = v[j + h];
        v[j] = x + y;
        v[j + h] = x - y;
      }
}

std::vector<std::int32_t> column(const Field& field, const Lut& f, Elem b, const std::vector<std::uint32_t>& masks) {
  std::vector<std::int32_t> t(f.size());
  for (std::size_t x = 0; x < f.size(); ++x) t[x] = field.abs_trace(field.mul(b, f[x])) ? -1 : 1;
  fwht(t);
  std::vector<std::int32_t> out(f.size());
  for (std::size_t a = 0; a < f.size(); ++a) out[a] = t[masks[a]];
  return out;
}

}  // namespace

std::int64_t walsh_coefficient(const Field& field, const Lut& f, Elem a, Elem b) {
  std::int64_t s = 0;
  for (std::uint32_t x = 0; x < f.size(); ++x)
    s += field.abs_trace(field.mul(b, f[x]) + field.mul(a, Elem{x})) ? -1 : 1;
  return s;
}

std::vector<std::int32_t> walsh_column(const Field& field, const Lut& f, Elem b) {
  return column(field, f, b, trace_masks(field));
}

WalshSpectrum extended_walsh_spectrum(const Field& field, const Lut& f) {
  const auto masks = trace_masks(field);
  WalshSpectrum s;
  for (std::uint32_t b = 1; b < f.size(); ++b)
    for (const auto w : column(field, f, Elem{b}, masks)) ++s[static_cast<std::uint32_t>(std::abs(w))];
  return s;
}

WalshSpectrum extended_walsh_spectrum(const Field& field, const Coeffs& c) {
  return extended_walsh_spectrum(field, truth_table(field, c));
}

std::string serialize_spectrum(const std::map<std::uint32_t, std::uint64_t>& s) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [v, n] : s) {
    os << (first ? "" : ",") << v << ':' << n;
    first = false;
  }
  return os.str();
}

}  // namespace dillon
