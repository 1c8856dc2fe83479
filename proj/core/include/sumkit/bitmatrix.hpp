#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "sumkit/types.hpp"

namespace sumkit {

/// Dense bit matrix; rows are contiguous u64 words.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), wpr_((cols + 63) / 64),
        bits_(rows * wpr_, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t words_per_row() const { return wpr_; }

  bool test(std::size_t r, std::size_t c) const {
    return (bits_[r * wpr_ + c / 64] >> (c % 64)) & 1u;
  }
  void set(std::size_t r, std::size_t c) {
    bits_[r * wpr_ + c / 64] |= u64(1) << (c % 64);
  }
  void clear(std::size_t r, std::size_t c) {
    bits_[r * wpr_ + c / 64] &= ~(u64(1) << (c % 64));
  }

  const u64* row(std::size_t r) const { return bits_.data() + r * wpr_; }

  u64 row_popcount(std::size_t r) const {
    u64 n = 0;
    const u64* w = row(r);
    for (std::size_t i = 0; i < wpr_; ++i) n += std::popcount(w[i]);
    return n;
  }

  u64 and_popcount(std::size_t r1, std::size_t r2) const {
    u64 n = 0;
    const u64* a = row(r1);
    const u64* b = row(r2);
    for (std::size_t i = 0; i < wpr_; ++i) n += std::popcount(a[i] & b[i]);
    return n;
  }

  u64 popcount() const {
    u64 n = 0;
    for (u64 w : bits_) n += std::popcount(w);
    return n;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0, wpr_ = 0;
  std::vector<u64> bits_;
};

}  // namespace sumkit
