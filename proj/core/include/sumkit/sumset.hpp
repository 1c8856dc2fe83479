#pragma once

#include <utility>
#include <vector>

#include "sumkit/hash_family.hpp"
#include "sumkit/types.hpp"
#include "sumkit/util.hpp"

namespace sumkit {

/// {a+b : a in A, b in B} for 1D sets via one indicator convolution.
/// Requires the combined universe to fit under the dense cap.
PointSet sumset_small_universe(const PointSet& A, const PointSet& B,
                               WorkCounter* wc = nullptr);

enum class SumsetMode { randomized, deterministic };

struct SumsetOptions {
  SumsetMode mode = SumsetMode::randomized;
  FamilyOptions family;
  /// Brute-check A+B <= T before answering, on small inputs only.
  bool debug_check = true;
};

/// Computes A+B exactly, given a superset T of A+B, by hashing into a small
/// range and convolving there (one convolution per family member).
/// Callers that cannot guarantee A+B <= T must keep debug_check on.
PointSet sumset_via_fft(const PointSet& A, const PointSet& B,
                        const PointSet& T, const SumsetOptions& opt,
                        Rng* rng = nullptr, WorkCounter* wc = nullptr);

/// Same, with a family already built for T (the preprocessed-T path).
PointSet sumset_via_fft(const PointSet& A, const PointSet& B,
                        const HashFamily& fam, bool debug_check = false,
                        WorkCounter* wc = nullptr);

/// Sparse non-negative vector as sorted (position, value) pairs.
struct SparseVec {
  std::vector<std::pair<i64, i64>> entries;
};

/// Output-sensitive convolution: exact z_s for every s in T, where T covers
/// the support of the result.
SparseVec sparse_convolution(const SparseVec& u, const SparseVec& v,
                             const std::vector<i64>& T,
                             const SumsetOptions& opt = {},
                             Rng* rng = nullptr, WorkCounter* wc = nullptr);

}  // namespace sumkit
