#include "dillon/gf2matrix.hpp"

#include <algorithm>

namespace dillon {

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64), data_(rows * words_, 0) {}

void BitMatrix::set(std::size_t r, std::size_t c, bool v) {
  const std::uint64_t bit = std::uint64_t{1} << (c % 64);
  if (v) row(r)[c / 64] |= bit;
  else row(r)[c / 64] &= ~bit;
}

std::size_t BitMatrix::rank() const {
  std::vector<std::uint64_t> m = data_;
  auto r = [&](std::size_t i) { return m.data() + i * words_; };
  std::size_t rank = 0;
  for (std::size_t w = 0; w < words_ && rank < rows_; ++w) {
    for (unsigned b = 0; b < 64 && rank < rows_; ++b) {
      const std::uint64_t bit = std::uint64_t{1} << b;
      std::size_t p = rank;
      while (p < rows_ && !(r(p)[w] & bit)) ++p;
      if (p == rows_) continue;
      if (p != rank) std::swap_ranges(r(p), r(p) + words_, r(rank));
      const std::uint64_t* pivot = r(rank);
      for (std::size_t i = rank + 1; i < rows_; ++i) {
        std::uint64_t* row_i = r(i);
        if (!(row_i[w] & bit)) continue;
        for (std::size_t k = w; k < words_; ++k) row_i[k] ^= pivot[k];
      }
      ++rank;
    }
  }
  return rank;
}

}  // namespace dillon
