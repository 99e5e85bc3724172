#pragma once

// Dense matrices over GF(2), rows packed into 64-bit words.

#include <cstddef>
#include <cstdint>
#include <vector>

namespace dillon {

class BitMatrix {
 public:
  BitMatrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool get(std::size_t r, std::size_t c) const { return (row(r)[c / 64] >> (c % 64)) & 1; }
  void set(std::size_t r, std::size_t c, bool v = true);

  /// Rank by Gaussian elimination with row-swap pivoting; works on a copy.
  std::size_t rank() const;

 private:
  const std::uint64_t* row(std::size_t r) const { return data_.data() + r * words_; }
  std::uint64_t* row(std::size_t r) { return data_.data() + r * words_; }

  std::size_t rows_, cols_, words_;
  std::vector<std::uint64_t> data_;
};

}  // namespace dillon
