#include "sumkit/grid.hpp"

#include <algorithm>
#include <limits>

namespace sumkit {

namespace {

void sort_dedup_rows(int dim, std::vector<i64>& flat) {
  if (dim <= 0 || flat.empty()) return;
  std::size_t d = static_cast<std::size_t>(dim);
  std::size_t n = flat.size() / d;
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  auto less = [&](std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < d; ++j) {
      if (flat[a * d + j] != flat[b * d + j])
        return flat[a * d + j] < flat[b * d + j];
    }
    return false;
  };
  std::sort(order.begin(), order.end(), less);
  std::vector<i64> out;
  out.reserve(flat.size());
  for (std::size_t k = 0; k < n; ++k) {
    if (k > 0) {
      bool same = true;
      for (std::size_t j = 0; j < d; ++j) {
        if (flat[order[k] * d + j] != flat[order[k - 1] * d + j]) {
          same = false;
          break;
        }
      }
      if (same) continue;
    }
    for (std::size_t j = 0; j < d; ++j) out.push_back(flat[order[k] * d + j]);
  }
  flat = std::move(out);
}

}  // namespace

PointSet::PointSet(int dim, i64 universe, std::vector<i64> flat_coords)
    : dim_(dim), universe_(universe), coords_(std::move(flat_coords)) {
  if (dim_ < 1) throw std::invalid_argument("PointSet: dim must be >= 1");
  if (universe_ < 1) throw std::invalid_argument("PointSet: universe must be >= 1");
  if (coords_.size() % static_cast<std::size_t>(dim_) != 0)
    throw std::invalid_argument("PointSet: coordinate count not divisible by dim");
  for (i64 c : coords_) {
    if (c < 0 || c >= universe_)
      throw std::invalid_argument("PointSet: coordinate " + std::to_string(c) +
                                  " outside [0," + std::to_string(universe_) + ")");
  }
  sort_dedup_rows(dim_, coords_);
}

PointSet PointSet::from_points(int dim, i64 universe,
                               const std::vector<Point>& pts) {
  std::vector<i64> flat;
  flat.reserve(pts.size() * static_cast<std::size_t>(dim));
  for (const auto& p : pts) {
    if (static_cast<int>(p.size()) != dim)
      throw std::invalid_argument("PointSet: point dimension mismatch");
    flat.insert(flat.end(), p.begin(), p.end());
  }
  return PointSet(dim, universe, std::move(flat));
}

PointSet PointSet::from_values(i64 universe, std::vector<i64> values) {
  return PointSet(1, universe, std::move(values));
}

const std::vector<i64>& PointSet::values() const {
  if (dim_ != 1) throw std::invalid_argument("PointSet::values: set is not 1D");
  return coords_;
}

GridConfig::GridConfig(i64 side_, i64 universe_, int dim_)
    : side(side_), universe(universe_), dim(dim_) {
  if (dim < 1) throw std::invalid_argument("GridConfig: dim must be >= 1");
  if (side < 1 || side > universe)
    throw std::invalid_argument("GridConfig: need 1 <= side <= universe");
}

i64 GridConfig::cell_volume() const {
  unsigned __int128 v = 1;
  for (int j = 0; j < dim; ++j) {
    v *= static_cast<unsigned __int128>(side);
    if (v > static_cast<unsigned __int128>(std::numeric_limits<i64>::max()))
      throw std::overflow_error("GridConfig: cell volume overflows 64 bits");
  }
  return static_cast<i64>(v);
}

CellLabel cell_of(std::span<const i64> p, const GridConfig& g) {
  if (static_cast<int>(p.size()) != g.dim)
    throw std::invalid_argument("cell_of: dimension mismatch");
  CellLabel c(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) c[j] = p[j] / g.side;
  return c;
}

CellLabel cell_of(const Point& p, const GridConfig& g) {
  return cell_of(std::span<const i64>(p.data(), p.size()), g);
}

std::vector<AlignedPart> align_decompose(const PointSet& s,
                                         const GridConfig& g) {
  if (s.dim() != g.dim)
    throw std::invalid_argument("align_decompose: dimension mismatch");
  if (g.side % 2 != 0)
    throw std::invalid_argument("align_decompose: side must be even");
  if (s.empty()) return {};

  i64 half = g.side / 2;
  int d = s.dim();
  std::vector<std::vector<i64>> flats(std::size_t(1) << d);
  for (std::size_t i = 0; i < s.size(); ++i) {
    auto p = s.point(i);
    unsigned mask = 0;
    for (int j = 0; j < d; ++j)
      if (p[j] % g.side >= half) mask |= (1u << j);
    auto& flat = flats[mask];
    for (int j = 0; j < d; ++j)
      flat.push_back((mask >> j) & 1u ? p[j] - half : p[j]);
  }

  std::vector<AlignedPart> parts;
  for (unsigned mask = 0; mask < flats.size(); ++mask) {
    if (flats[mask].empty()) continue;
    AlignedPart part;
    part.mask = mask;
    part.shift.assign(static_cast<std::size_t>(d), 0);
    for (int j = 0; j < d; ++j)
      if ((mask >> j) & 1u) part.shift[static_cast<std::size_t>(j)] = half;
    part.subset = PointSet(d, s.universe(), std::move(flats[mask]));
    parts.push_back(std::move(part));
  }
  return parts;
}

i64 flatten_sum_universe(const GridConfig& g) {
  i64 cells = 2 * g.cells_per_axis();
  i64 vol = g.cell_volume();
  unsigned __int128 bound = static_cast<unsigned __int128>(vol);
  for (int j = 0; j < g.dim; ++j) {
    bound *= static_cast<unsigned __int128>(cells);
    if (bound > static_cast<unsigned __int128>(std::numeric_limits<i64>::max()))
      throw std::overflow_error(
          "flatten: (2*ceil(U/side))^d * side^d = " +
          std::to_string(static_cast<double>(bound)) +
          " exceeds 64-bit range");
  }
  return static_cast<i64>(bound);
}

i64 flatten_point(std::span<const i64> p, const GridConfig& g) {
  if (static_cast<int>(p.size()) != g.dim)
    throw std::invalid_argument("flatten: dimension mismatch");
  i64 base = 2 * g.cells_per_axis();
  i64 vol = g.cell_volume();
  i64 cell_part = 0, intra_part = 0;
  i64 wc = 1, wi = 1;
  for (int j = 0; j < g.dim; ++j) {
    cell_part += (p[static_cast<std::size_t>(j)] / g.side) * wc;
    intra_part += (p[static_cast<std::size_t>(j)] % g.side) * wi;
    wc *= base;
    wi *= g.side;
  }
  return vol * cell_part + intra_part;
}

PointSet flatten_to_1d(const PointSet& s, const GridConfig& g) {
  if (s.dim() != g.dim)
    throw std::invalid_argument("flatten: dimension mismatch");
  i64 half = g.side / 2;
  i64 uni = flatten_sum_universe(g);  // throws on overflow
  std::vector<i64> vals;
  vals.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    auto p = s.point(i);
    if (g.side >= 2) {
      for (int j = 0; j < g.dim; ++j) {
        if (p[static_cast<std::size_t>(j)] % g.side >= half)
          throw std::invalid_argument(
              "flatten: input not aligned at coordinate " + std::to_string(j));
      }
    }
    vals.push_back(flatten_point(p, g));
  }
  return PointSet::from_values(uni, std::move(vals));
}

std::optional<int> monotone_violation(const PointSet& s) {
  // Points are stored lex-sorted; a monotone set is a chain under the
  // product order, and the lex order of a chain is the chain itself.
  std::size_t d = static_cast<std::size_t>(s.dim());
  for (std::size_t i = 1; i < s.size(); ++i) {
    auto prev = s.point(i - 1);
    auto cur = s.point(i);
    for (std::size_t j = 0; j < d; ++j)
      if (cur[j] < prev[j]) return static_cast<int>(j);
  }
  return std::nullopt;
}

bool is_monotone(const PointSet& s) { return !monotone_violation(s).has_value(); }

CellCodec::CellCodec(const GridConfig& g) : dim_(g.dim) {
  base_ = 2 * g.cells_per_axis();
  weights_.resize(static_cast<std::size_t>(dim_));
  unsigned __int128 w = 1;
  for (int j = 0; j < dim_; ++j) {
    if (w > static_cast<unsigned __int128>(std::numeric_limits<i64>::max()))
      throw std::overflow_error("CellCodec: code range overflows 64 bits");
    weights_[static_cast<std::size_t>(j)] = static_cast<i64>(w);
    w *= static_cast<unsigned __int128>(base_);
  }
  if (w > static_cast<unsigned __int128>(std::numeric_limits<i64>::max()))
    throw std::overflow_error("CellCodec: code range overflows 64 bits");
  sum_universe_ = static_cast<i64>(w);
}

i64 CellCodec::encode(std::span<const i64> cell) const {
  i64 code = 0;
  for (int j = 0; j < dim_; ++j)
    code += cell[static_cast<std::size_t>(j)] * weights_[static_cast<std::size_t>(j)];
  return code;
}

CellLabel CellCodec::decode(i64 code) const {
  CellLabel c(static_cast<std::size_t>(dim_));
  for (int j = 0; j < dim_; ++j) {
    c[static_cast<std::size_t>(j)] = code % base_;
    code /= base_;
  }
  return c;
}

}  // namespace sumkit
