#pragma once

#include <optional>
#include <span>
#include <vector>

#include "sumkit/solvers.hpp"
#include "sumkit/types.hpp"

namespace sumkit {

/// Quadratic (min,+) convolution; the oracle.  Accepts arbitrary integers.
std::vector<i64> minplus_naive(std::span<const i64> a, std::span<const i64> b);

/// Lower/upper envelopes of A+B per x-column, x starting at x_min.
struct SumsetBoundary {
  i64 x_min = 0;
  std::vector<i64> lower;
  std::vector<i64> upper;
};

/// Exact envelopes of the sumset of two connected monotone increasing 2D
/// sets, computed by a simultaneous binary search: O(log range) rounds, each
/// one batched 3SUM+ call on the monotone midpoint set.
SumsetBoundary boundary_of_sumset(const PointSet& A, const PointSet& B,
                                  std::optional<SolveParams> params = {},
                                  u64 seed = 1, WorkCounter* wc = nullptr);

/// (min,+) convolution of non-decreasing sequences with values in [bound],
/// via the sumset-boundary reduction on the staircase sets.
std::vector<i64> minplus_bounded_monotone(std::span<const i64> a,
                                          std::span<const i64> b,
                                          u64 seed = 1,
                                          WorkCounter* wc = nullptr);

/// (min,+) convolution when consecutive differences are bounded by c:
/// add c*i to make the inputs monotone, solve, subtract c*k from entry k.
std::vector<i64> minplus_bounded_differences(std::span<const i64> a,
                                             std::span<const i64> b, i64 c,
                                             u64 seed = 1,
                                             WorkCounter* wc = nullptr);

}  // namespace sumkit
