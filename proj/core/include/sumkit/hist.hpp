#pragma once

#include <string>
#include <vector>

#include "sumkit/types.hpp"

namespace sumkit {

/// Binary histogram index: extreme 1-counts over all substrings of each
/// length.  Queries are O(1) interval tests.
struct HistIndex {
  i64 n = 0;
  std::vector<i64> min_ones;  // indexed by substring length 0..n
  std::vector<i64> max_ones;
};

/// Builds the index through the bounded monotone (min,+) reduction on the
/// prefix-count sequence and its negated reversal.
HistIndex histindex_build_binary(const std::string& s, u64 seed = 1,
                                 WorkCounter* wc = nullptr);

/// True iff some substring has exactly `zeros` 0s and `ones` 1s.
bool histindex_query(const HistIndex& idx, i64 zeros, i64 ones);

/// Batch histogram queries over alphabet [d]: query vector q is answered
/// true iff some substring has exactly q[c] occurrences of each symbol c.
std::vector<char> hist_offline_queries(const std::string& s, int alphabet,
                                       const std::vector<Point>& queries,
                                       u64 seed = 1, WorkCounter* wc = nullptr);

/// Prefix symbol-count vectors a_0..a_n of a string over [alphabet].
std::vector<Point> prefix_counts(const std::string& s, int alphabet);

}  // namespace sumkit
