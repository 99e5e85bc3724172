#pragma once

// Walsh coefficients W(a,b) = sum_x (-1)^{Tr(b f(x) + a x)} with the absolute trace.

#include <cstdint>
#include <map>
#include <string>

#include "dillon/diffanalysis.hpp"

namespace dillon {

/// |W| value -> multiplicity over all a and all b != 0.
using WalshSpectrum = std::map<std::uint32_t, std::uint64_t>;

std::int64_t walsh_coefficient(const Field& field, const Lut& f, Elem a, Elem b);

/// All W(., b) for one output mask, indexed by a.bits.
std::vector<std::int32_t> walsh_column(const Field& field, const Lut& f, Elem b);

WalshSpectrum extended_walsh_spectrum(const Field& field, const Lut& f);
WalshSpectrum extended_walsh_spectrum(const Field& field, const Coeffs& c);

/// Sorted `value:count` pairs separated by commas.
std::string serialize_spectrum(const std::map<std::uint32_t, std::uint64_t>& s);

}  // namespace dillon
