#pragma once

#include <optional>
#include <vector>

#include "sumkit/bsg.hpp"
#include "sumkit/hash_family.hpp"
#include "sumkit/solvers.hpp"
#include "sumkit/types.hpp"
#include "sumkit/util.hpp"

namespace sumkit {

/// Preprocessed 1D universes: a stored BSG cover of (A0, B0, S0) with exact
/// per-biclique sumsets and hash families, so subset queries only filter the
/// remainder and re-run the small hashed convolutions.
class PreprocUniverse {
 public:
  /// With an explicit S0.  alpha defaults to n^(-1/7).
  static PreprocUniverse build(const std::vector<i64>& A0,
                               const std::vector<i64>& B0,
                               const std::vector<i64>& S0,
                               std::optional<double> alpha = {}, u64 seed = 1,
                               WorkCounter* wc = nullptr);

  /// Without S0: buckets every pair sum, takes S0 = sums with popularity
  /// > n/t; t defaults to n^(1/10).
  static PreprocUniverse build_no_s(const std::vector<i64>& A0,
                                    const std::vector<i64>& B0,
                                    std::optional<double> t = {}, u64 seed = 1,
                                    WorkCounter* wc = nullptr);

  /// 3SUM+ for subsets; requires A <= A0, B <= B0 and, when S0 was given,
  /// S <= S0.  The no-S0 variant accepts arbitrary S.
  ThreeSumResult query(const std::vector<i64>& A, const std::vector<i64>& B,
                       const std::vector<i64>& S) const;

  const BsgCover& cover() const { return cover_; }
  double alpha() const { return alpha_; }
  double t() const { return t_; }
  bool has_buckets() const { return has_buckets_; }
  i64 popularity_cutoff() const { return pop_cutoff_; }

 private:
  std::vector<i64> a0_, b0_, s0_;  // sorted
  BsgCover cover_;
  std::vector<HashFamily> families_;  // per biclique
  double alpha_ = 1.0;
  double t_ = 1.0;
  bool has_buckets_ = false;
  i64 pop_cutoff_ = 0;  // n/t
  // Buckets for the no-S0 variant: pair lists grouped by sum.
  std::vector<i64> bucket_sums_;                       // sorted
  std::vector<std::vector<std::pair<i64, i64>>> bucket_pairs_;

  void build_families(u64 seed, WorkCounter* wc);
};

struct WeightedGraph {
  i64 n = 0;
  std::vector<i64> weight;
  std::vector<std::vector<i64>> adj;  // undirected, no self-loops
};

/// True iff some star K_{1,3} (a vertex with three distinct neighbors) has
/// total weight exactly W.  Uses preprocessed weight universes; candidate
/// sums are validated against neighbor-weight multiplicities so no vertex is
/// ever reused.
bool k13_weighted(const WeightedGraph& g, i64 W, u64 seed = 1,
                  WorkCounter* wc = nullptr);

}  // namespace sumkit
