#pragma once

#include <span>
#include <vector>

#include "sumkit/types.hpp"

namespace sumkit {

/// Hard cap on dense vector / transform length.
inline constexpr i64 kDenseCap = i64(1) << 23;

/// Exact integer convolution: z_k = sum_i u_i * v_{k-i}.
/// Entries must be non-negative; all arithmetic is exact (number-theoretic
/// transforms over word-size primes, recombined by CRT).  Throws on empty
/// inputs exceeding the cap or when an output entry could overflow 64 bits.
std::vector<i64> convolve(std::span<const i64> u, std::span<const i64> v,
                          WorkCounter* wc = nullptr);

inline std::vector<i64> convolve(const std::vector<i64>& u,
                                 const std::vector<i64>& v,
                                 WorkCounter* wc = nullptr) {
  return convolve(std::span<const i64>(u), std::span<const i64>(v), wc);
}

}  // namespace sumkit
