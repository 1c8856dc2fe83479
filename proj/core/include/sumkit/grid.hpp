#pragma once

#include <optional>
#include <span>
#include <vector>

#include "sumkit/types.hpp"

namespace sumkit {

/// Coordinate-wise floor division by the grid side.
CellLabel cell_of(std::span<const i64> p, const GridConfig& g);
CellLabel cell_of(const Point& p, const GridConfig& g);

/// Splits a set into at most 2^d aligned parts keyed by the bitmask of
/// coordinates whose residue was >= side/2 and therefore shifted by side/2.
/// Translating each part back by its shift and uniting reproduces the input.
/// Requires an even side so the shift stays integral.
std::vector<AlignedPart> align_decompose(const PointSet& s,
                                         const GridConfig& g);

/// Injective map of aligned d-dimensional points to 1D integers:
///   L * sum_j floor(x_j/side) * (2*ceil(U/side))^(j-1)
///     + sum_j (x_j mod side) * side^(j-1)
/// Additive on aligned inputs: f(a) + f(b) = f(a+b).
PointSet flatten_to_1d(const PointSet& s, const GridConfig& g);
i64 flatten_point(std::span<const i64> p, const GridConfig& g);

/// Upper bound (exclusive) on flattened values of sums of two aligned points.
i64 flatten_sum_universe(const GridConfig& g);

/// True iff the points admit an ordering simultaneously non-decreasing in
/// every coordinate; tested by lexicographic sort then verification.
bool is_monotone(const PointSet& s);

/// Index of the first coordinate witnessing non-monotonicity, or nullopt.
std::optional<int> monotone_violation(const PointSet& s);

/// Encodes cell labels (and their pairwise sums) additively into 1D codes
/// using base 2*ceil(U/side) per coordinate, so no digit carries occur.
class CellCodec {
 public:
  explicit CellCodec(const GridConfig& g);

  i64 encode(std::span<const i64> cell) const;
  CellLabel decode(i64 code) const;
  i64 sum_universe() const { return sum_universe_; }
  int dim() const { return dim_; }

 private:
  int dim_;
  i64 base_;  // 2 * ceil(U / side)
  std::vector<i64> weights_;
  i64 sum_universe_;
};

}  // namespace sumkit
