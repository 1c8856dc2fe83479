#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "sumkit/bsg.hpp"
#include "sumkit/grid.hpp"
#include "sumkit/types.hpp"
#include "sumkit/util.hpp"

namespace sumkit {

struct ThreeSumResult {
  PointSet hits;  // subset of S realized as a+b
  std::vector<std::pair<Point, Point>> witnesses;  // parallel to hits when enabled
  WorkCounter work;
};

struct SolveParams {
  i64 ell = 2;            // grid side, forced even
  double alpha = 0.25;    // BSG parameter
  int recurse = 8;        // recursion depth limit
  i64 brute_cutoff = 32;  // sub-universe side at/below which brute force runs
  bool deterministic = false;
  bool witnesses = false;
  double exponent = 0.0;  // predicted work exponent, informational
};

/// Pair enumeration against a membership structure on S; the oracle.
/// work.pair_ops is exactly |A|*|B|.
ThreeSumResult threesum_brute(const PointSet& A, const PointSet& B,
                              const PointSet& S, bool witnesses = false);

/// 1D small-universe route: one indicator convolution, then intersect.
ThreeSumResult threesum_fft(const PointSet& A, const PointSet& B,
                            const PointSet& S);

/// Grid parameters from the subquadratic recurrence for monotone sets:
/// ell = ceil(n^x) rounded even and 1/alpha = n^y, where the exponents solve
/// z = 2(1-x), y = x z, and 6z^2 + (d-11)z - 2d = 0.
SolveParams tune_monotone_params(i64 n, int d);

/// 3SUM+ for monotone A, B, S: BSG cover over grid cells, recursion on
/// remainder cell pairs, hashed-FFT sumsets per biclique.
ThreeSumResult threesum_monotone(const PointSet& A, const PointSet& B,
                                 const PointSet& S,
                                 std::optional<SolveParams> params = {},
                                 u64 seed = 1);

/// The clustered-set tuning rule: 1/alpha as the smaller of
/// [(K_A K_B)^2 W / (K_S^3 L)]^(1/7) and (K_B W)^(1/6).
double clustered_alpha(i64 ka, i64 kb, i64 ks, i64 L, i64 W);

/// 3SUM+ for clustered sets; no recursion, remainder pairs solved by the
/// cheapest of the three brute pairings.
ThreeSumResult threesum_clustered(const PointSet& A, const PointSet& B,
                                  const PointSet& S, const ClusterDesc& da,
                                  const ClusterDesc& db, const ClusterDesc& ds,
                                  std::optional<double> alpha = {},
                                  u64 seed = 1, bool deterministic = false,
                                  bool witnesses = false);

/// Splits a set into O(log n) equitably clustered subsets by bucketing grid
/// cells on floor(log2(occupancy)).
std::vector<std::pair<PointSet, ClusterDesc>> equitable_decompose(
    const PointSet& s, const GridConfig& g);

/// Only A's clustering is promised; B and S are arbitrary sets.  Decomposes
/// all three equitably over A's grid and crosses the subset triples through
/// the clustered solver.
ThreeSumResult threesum_one_clustered(const PointSet& A, const PointSet& B,
                                      const PointSet& S, const ClusterDesc& da,
                                      u64 seed = 1, bool witnesses = false);

}  // namespace sumkit
