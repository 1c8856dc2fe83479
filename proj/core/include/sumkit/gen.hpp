#pragma once

#include <string>
#include <vector>

#include "sumkit/types.hpp"
#include "sumkit/util.hpp"

namespace sumkit {

/// Random monotone set of exactly n points in [n]^d, deterministic in seed.
PointSet gen_monotone(i64 n, int d, u64 seed);

struct ClusteredInstance {
  PointSet points;
  ClusterDesc desc;
};

/// 1D set of n points coverable by K grid-aligned intervals of length L.
ClusteredInstance gen_clustered(i64 n, i64 K, i64 L, u64 seed);

/// Non-decreasing sequence of n values in [c*n].
std::vector<i64> gen_bounded_monotone_seq(i64 n, i64 c, u64 seed);

/// Uniform string of length n over alphabet {0, ..., alphabet-1}.
std::string gen_string(i64 n, int alphabet, u64 seed);

}  // namespace sumkit
