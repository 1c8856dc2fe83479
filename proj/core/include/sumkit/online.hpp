#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sumkit/bsg.hpp"
#include "sumkit/grid.hpp"
#include "sumkit/types.hpp"
#include "sumkit/util.hpp"

namespace sumkit {

struct QueryStats {
  u64 low_queries = 0;   // answered by scanning a bucket
  u64 high_queries = 0;  // answered by the precomputed list
};

/// Sumset-membership structure: cell-pair buckets for low-popularity sums,
/// a BSG-pruned exact list for high-popularity ones.  One substructure per
/// aligned part pair; query answers are OR-ed.
class OnlineStruct {
 public:
  static OnlineStruct build(const PointSet& A, const PointSet& B,
                            const GridConfig& g, i64 P,
                            std::optional<double> alpha = {}, u64 seed = 1,
                            WorkCounter* wc = nullptr);

  bool query(std::span<const i64> s, QueryStats* stats = nullptr) const;
  bool query(const Point& s, QueryStats* stats = nullptr) const {
    return query(std::span<const i64>(s.data(), s.size()), stats);
  }

  bool empty() const { return parts_.empty(); }
  i64 popularity_threshold() const { return P_; }
  /// Exact high-popularity list sizes per part (test hook).
  std::vector<std::size_t> list_sizes() const;

 private:
  struct Part {
    std::vector<i64> delta;  // combined part shifts
    CellCodec codec;
    FlatMap<i64> buckets;                       // cell-sum code -> bucket id
    std::vector<std::vector<std::pair<i64, i64>>> bucket_pairs;  // (a*, b*)
    FlatMap<i64> a_cells, b_cells;              // cell code -> id
    std::vector<std::vector<i64>> a_cell_vals, b_cell_vals;  // flattened, sorted
    FlatSet high_cells;                         // S*
    std::vector<i64> pruned_list;               // flattened members of L
    Part(const CellCodec& c) : codec(c) {}
  };

  GridConfig grid_;
  i64 P_ = 1;
  i64 sum_limit_ = 0;  // strict upper bound on sum coordinates
  std::vector<Part> parts_;
};

struct OnlineTune {
  i64 ell = 2;
  double Q = 1.0;
  double preprocessing_exponent = 2.0;
  double query_exponent = 1.0;
};

/// Grid side and query-budget parameter from the online-monotone tuning:
/// ell = n^(delta/2), Q = n^(1/3 - delta(d+13)/6); the popularity threshold
/// follows as max(K_A, K_B)/Q at build time.
OnlineTune tune_online(i64 n, int d, double delta);

i64 popularity_from_tune(i64 k_a, i64 k_b, double Q);

/// Online histogram queries over alphabet [d]: preprocess the string's
/// prefix-count sets, then decide substring count-vector membership.
class HistOnline {
 public:
  static HistOnline build(const std::string& s, int alphabet, double delta,
                          u64 seed = 1, WorkCounter* wc = nullptr);
  bool query(const Point& v, QueryStats* stats = nullptr) const;

 private:
  OnlineStruct core_;
  Point total_;
};

}  // namespace sumkit
