#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sumkit {

using i64 = std::int64_t;
using u64 = std::uint64_t;

/// A d-dimensional lattice point with non-negative coordinates.
using Point = std::vector<i64>;

/// Structural operation tally used to certify subquadratic behavior
/// independently of machine speed.  One counter per solve invocation;
/// never shared across concurrent solves.
struct WorkCounter {
  u64 pair_ops = 0;   // brute-force pair probes
  u64 fft_cells = 0;  // total superset/transform length processed
  u64 bsg_ops = 0;    // BSG-construction operations

  u64 total() const { return pair_ops + fft_cells + bsg_ops; }

  void merge(const WorkCounter& o) {
    pair_ops += o.pair_ops;
    fft_cells += o.fft_cells;
    bsg_ops += o.bsg_ops;
  }
};

/// Deduplicated set of d-dimensional points sharing one universe bound.
/// Points are kept lexicographically sorted, so equality is structural.
class PointSet {
 public:
  PointSet() = default;
  PointSet(int dim, i64 universe, std::vector<i64> flat_coords);

  static PointSet from_points(int dim, i64 universe,
                              const std::vector<Point>& pts);
  static PointSet from_values(i64 universe, std::vector<i64> values);

  int dim() const { return dim_; }
  i64 universe() const { return universe_; }
  std::size_t size() const {
    return dim_ == 0 ? 0 : coords_.size() / static_cast<std::size_t>(dim_);
  }
  bool empty() const { return coords_.empty(); }

  std::span<const i64> point(std::size_t i) const {
    return {coords_.data() + static_cast<std::size_t>(dim_) * i,
            static_cast<std::size_t>(dim_)};
  }
  Point point_vec(std::size_t i) const {
    auto p = point(i);
    return Point(p.begin(), p.end());
  }

  /// 1D view; only valid when dim() == 1.
  const std::vector<i64>& values() const;

  const std::vector<i64>& flat() const { return coords_; }

  bool operator==(const PointSet& o) const {
    return dim_ == o.dim_ && coords_ == o.coords_;
  }

 private:
  int dim_ = 0;
  i64 universe_ = 0;
  std::vector<i64> coords_;  // row-major, lexicographically sorted, dedup
};

/// Grid of axis-aligned cells with side length `side` over [universe)^dim.
struct GridConfig {
  i64 side = 1;
  i64 universe = 1;
  int dim = 1;

  GridConfig() = default;
  GridConfig(i64 side_, i64 universe_, int dim_);

  i64 cells_per_axis() const { return (universe + side - 1) / side; }
  i64 cell_volume() const;  // side^dim
};

/// Label of a grid cell: coordinate-wise floor division by the side length.
using CellLabel = std::vector<i64>;

/// Clustering promise: coverable by K disjoint hypercubes of volume L,
/// at most M points per cube when M is present.
struct ClusterDesc {
  i64 K = 1;
  i64 L = 1;
  std::optional<i64> M;
};

/// One aligned piece of a decomposed set.  `subset` already has the shift
/// subtracted, so all residues are < side/2; translating back by `shift`
/// recovers the original points.
struct AlignedPart {
  PointSet subset;
  std::vector<i64> shift;  // entries 0 or side/2
  unsigned mask = 0;       // bit j set iff coordinate j was shifted
};

}  // namespace sumkit
