#pragma once

// Difference distribution tables, APN and permutation tests.

#include <cstdint>
#include <map>
#include <ostream>
#include <vector>

#include "dillon/hexanomial.hpp"

namespace dillon {

using Lut = std::vector<Elem>;
using Table = std::vector<std::vector<std::uint32_t>>;

struct DiffProfile {
  std::uint32_t uniformity = 0;  // max over a != 0
  std::map<std::uint32_t, std::uint64_t> spectrum;  // DDT value -> count over a != 0, all b
  bool is_apn = false;
  bool is_permutation = false;
};

/// DDT[a][b] = #{x : f(x+a) + f(x) = b}; row 0 is included.
Table ddt(const Lut& f);
Table ddt(const Field& field, const Coeffs& c);

/// Computes the profile row by row without materialising the table.
DiffProfile diff_profile(const Lut& f);
DiffProfile diff_profile(const Field& field, const Coeffs& c);

/// Uniformity-2 test that stops at the first second solution pair.
bool is_apn_ddt(const Lut& f);
bool is_apn_ddt(const Field& field, const Coeffs& c);

/// Checks the derivative equation of the hexanomial family directly.
bool is_apn_equation(const Field& field, const Coeffs& c);

bool is_permutation(const Lut& f);
bool is_permutation(const Field& field, const Coeffs& c);

void write_ddt_csv(std::ostream& os, const Table& t);

}  // namespace dillon
