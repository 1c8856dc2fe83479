#include "sumkit/minplus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sumkit/util.hpp"

namespace sumkit {

namespace {

struct Columns {
  i64 x_min = 0, x_max = 0;
  std::vector<i64> lo, hi;  // per column x_min..x_max
};

// Validates connectivity + monotonicity and extracts per-column y-intervals.
Columns column_intervals(const PointSet& s, const char* name) {
  if (s.dim() != 2)
    throw std::invalid_argument(std::string("boundary_of_sumset: set ") + name +
                                " must be 2D");
  if (s.empty())
    throw std::invalid_argument(std::string("boundary_of_sumset: set ") + name +
                                " is empty");
  for (std::size_t i = 1; i < s.size(); ++i) {
    auto p = s.point(i - 1);
    auto q = s.point(i);
    i64 dx = q[0] - p[0], dy = q[1] - p[1];
    bool unit_step = (dx == 1 && dy == 0) || (dx == 0 && dy == 1);
    if (!unit_step)
      throw std::invalid_argument(std::string("boundary_of_sumset: set ") + name +
                                  " is not a connected monotone increasing set");
  }
  Columns c;
  c.x_min = s.point(0)[0];
  c.x_max = s.point(s.size() - 1)[0];
  std::size_t span = static_cast<std::size_t>(c.x_max - c.x_min + 1);
  c.lo.assign(span, std::numeric_limits<i64>::max());
  c.hi.assign(span, std::numeric_limits<i64>::min());
  for (std::size_t i = 0; i < s.size(); ++i) {
    auto p = s.point(i);
    std::size_t x = static_cast<std::size_t>(p[0] - c.x_min);
    c.lo[x] = std::min(c.lo[x], p[1]);
    c.hi[x] = std::max(c.hi[x], p[1]);
  }
  return c;
}

// Lower envelope of A+B via the batched binary search.
std::vector<i64> lower_envelope(const PointSet& A, const PointSet& B,
                                const Columns& ca, const Columns& cb,
                                const SolveParams& params, Rng& rng,
                                WorkCounter* wc) {
  const i64 x0 = ca.x_min + cb.x_min;
  const i64 x1 = ca.x_max + cb.x_max;
  const std::size_t width = static_cast<std::size_t>(x1 - x0 + 1);

  i64 y_top = ca.hi.back() + cb.hi.back();
  i64 len = 1;
  while (len <= y_top) len <<= 1;

  std::vector<i64> lo(width, 0);
  // One element of each column: pick any feasible split of x into A- and
  // B-columns and add their lowest points.
  auto sample_elem = [&](i64 k_global) {
    i64 i = std::max(ca.x_min, k_global - cb.x_max);
    i64 j = k_global - i;
    return ca.lo[static_cast<std::size_t>(i - ca.x_min)] +
           cb.lo[static_cast<std::size_t>(j - cb.x_min)];
  };

  i64 d_universe = std::max(A.universe(), B.universe());
  while (len > 1) {
    i64 half = len / 2;
    std::vector<i64> flat;
    flat.reserve(width * 2);
    std::vector<i64> mids(width);
    for (std::size_t k = 0; k < width; ++k) {
      mids[k] = lo[k] + half - 1;
      flat.push_back(x0 + static_cast<i64>(k));
      flat.push_back(mids[k]);
    }
    PointSet S(2, std::max(2 * d_universe, y_top + len + 1), std::move(flat));
    ThreeSumResult round = threesum_monotone(A, B, S, params, rng());
    if (wc) wc->merge(round.work);
    FlatSet hit_x;
    for (std::size_t i = 0; i < round.hits.size(); ++i)
      hit_x.insert(round.hits.point(i)[0]);
    for (std::size_t k = 0; k < width; ++k) {
      if (hit_x.contains(x0 + static_cast<i64>(k))) continue;  // s_k <= mid: keep low half
      i64 e = sample_elem(x0 + static_cast<i64>(k));
      if (e > mids[k]) lo[k] += half;  // entire column above the midpoint
    }
    len = half;
  }
  return lo;
}

PointSet reflect(const PointSet& s, i64 x_max, i64 y_max) {
  std::vector<i64> flat;
  flat.reserve(s.size() * 2);
  for (std::size_t i = 0; i < s.size(); ++i) {
    auto p = s.point(i);
    flat.push_back(x_max - p[0]);
    flat.push_back(y_max - p[1]);
  }
  return PointSet(2, s.universe(), std::move(flat));
}

SolveParams boundary_params(i64 universe) {
  // The tuned grid side from the asymptotic recurrence stays at 2 for any
  // feasible n, which makes the cell sets nearly as large as the point sets.
  // A coarser grid keeps the per-round cover cheap at these input sizes.
  SolveParams p = tune_monotone_params(std::max<i64>(2, universe), 2);
  p.ell = round_up_even(static_cast<i64>(
      std::ceil(std::pow(static_cast<double>(std::max<i64>(universe, 4)), 0.4))));
  return p;
}

}  // namespace

std::vector<i64> minplus_naive(std::span<const i64> a, std::span<const i64> b) {
  if (a.empty() || b.empty()) return {};
  std::vector<i64> out(a.size() + b.size() - 1, std::numeric_limits<i64>::max());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      out[i + j] = std::min(out[i + j], a[i] + b[j]);
  return out;
}

SumsetBoundary boundary_of_sumset(const PointSet& A, const PointSet& B,
                                  std::optional<SolveParams> params, u64 seed,
                                  WorkCounter* wc) {
  Columns ca = column_intervals(A, "A");
  Columns cb = column_intervals(B, "B");
  SolveParams p = params ? *params
                         : boundary_params(std::max(A.universe(), B.universe()));
  Rng rng(seed);

  SumsetBoundary out;
  out.x_min = ca.x_min + cb.x_min;
  out.lower = lower_envelope(A, B, ca, cb, p, rng, wc);

  // Upper envelope: reflect both sets through their max corner and reuse the
  // lower-envelope machinery.
  i64 ax = ca.x_max, ay = ca.hi.back();
  i64 bx = cb.x_max, by = cb.hi.back();
  PointSet Ar = reflect(A, ax, ay);
  PointSet Br = reflect(B, bx, by);
  Columns car = column_intervals(Ar, "A");
  Columns cbr = column_intervals(Br, "B");
  std::vector<i64> lr = lower_envelope(Ar, Br, car, cbr, p, rng, wc);

  std::size_t width = out.lower.size();
  out.upper.resize(width);
  for (std::size_t k = 0; k < width; ++k)
    out.upper[k] = (ay + by) - lr[width - 1 - k];

  for (std::size_t k = 0; k < width; ++k) {
    if (out.lower[k] > out.upper[k])
      throw std::logic_error("boundary_of_sumset: envelopes crossed");
    if (k > 0 && (out.lower[k] < out.lower[k - 1] || out.upper[k] < out.upper[k - 1]))
      throw std::logic_error("boundary_of_sumset: envelope not monotone");
  }
  return out;
}

namespace {

PointSet staircase(std::span<const i64> seq, i64 x_universe, i64 y_universe) {
  // Closed column intervals [a_i, a_{i+1}] keep consecutive columns joined
  // even when the sequence repeats; the lower endpoints are unchanged.
  std::vector<i64> flat;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    i64 top = i + 1 < seq.size() ? seq[i + 1] : seq[i];
    for (i64 y = seq[i]; y <= top; ++y) {
      flat.push_back(static_cast<i64>(i));
      flat.push_back(y);
    }
  }
  return PointSet(2, std::max(x_universe, y_universe), std::move(flat));
}

void require_monotone_seq(std::span<const i64> s, const char* name) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] < 0)
      throw std::invalid_argument(std::string("minplus: sequence ") + name +
                                  " has negative values");
    if (i > 0 && s[i] < s[i - 1])
      throw std::invalid_argument(std::string("minplus: sequence ") + name +
                                  " is not non-decreasing");
  }
}

}  // namespace

std::vector<i64> minplus_bounded_monotone(std::span<const i64> a,
                                          std::span<const i64> b, u64 seed,
                                          WorkCounter* wc) {
  if (a.empty() || b.empty()) return {};
  require_monotone_seq(a, "a");
  require_monotone_seq(b, "b");
  if (a.size() == 1 || b.size() == 1)
    return minplus_naive(a, b);

  i64 xu = static_cast<i64>(std::max(a.size(), b.size()));
  i64 yu = std::max(a.back(), b.back()) + 1;
  PointSet A = staircase(a, xu, yu);
  PointSet B = staircase(b, xu, yu);
  SumsetBoundary bd = boundary_of_sumset(A, B, {}, seed, wc);
  if (bd.x_min != 0 ||
      bd.lower.size() != a.size() + b.size() - 1)
    throw std::logic_error("minplus_bounded_monotone: boundary width mismatch");
  return bd.lower;
}

std::vector<i64> minplus_bounded_differences(std::span<const i64> a,
                                             std::span<const i64> b, i64 c,
                                             u64 seed, WorkCounter* wc) {
  if (c < 0) throw std::invalid_argument("minplus: difference bound must be >= 0");
  auto check = [&](std::span<const i64> s, const char* name) {
    for (std::size_t i = 1; i < s.size(); ++i)
      if (std::llabs(s[i] - s[i - 1]) > c)
        throw std::invalid_argument(std::string("minplus: sequence ") + name +
                                    " violates the difference bound " +
                                    std::to_string(c));
  };
  check(a, "a");
  check(b, "b");
  if (a.empty() || b.empty()) return {};

  auto lift = [&](std::span<const i64> s) {
    std::vector<i64> t(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
      t[i] = s[i] + c * static_cast<i64>(i);
    i64 off = *std::min_element(t.begin(), t.end());
    for (auto& v : t) v -= off;
    return std::make_pair(t, off);
  };
  auto [ta, offa] = lift(a);
  auto [tb, offb] = lift(b);
  std::vector<i64> out = minplus_bounded_monotone(ta, tb, seed, wc);
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] += offa + offb - c * static_cast<i64>(k);
  return out;
}

}  // namespace sumkit
