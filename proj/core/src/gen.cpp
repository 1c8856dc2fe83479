#include "sumkit/gen.hpp"

#include <algorithm>
#include <set>

#include "sumkit/grid.hpp"

namespace sumkit {

PointSet gen_monotone(i64 n, int d, u64 seed) {
  if (n < 1 || d < 1) throw std::invalid_argument("gen_monotone: need n, d >= 1");
  Rng rng(seed);
  // Draw each coordinate as a sorted sample from [n]; zipping the sorted
  // columns yields a chain.  Duplicates are re-drawn until n distinct points
  // remain, which keeps |set| = n exactly.
  std::set<Point> pts;
  int rounds = 0;
  while (static_cast<i64>(pts.size()) < n && rounds < 64) {
    i64 need = n - static_cast<i64>(pts.size());
    i64 batch = need + need / 4 + 4;
    std::vector<std::vector<i64>> cols(static_cast<std::size_t>(d));
    for (auto& col : cols) {
      col.resize(static_cast<std::size_t>(batch));
      for (auto& v : col) v = static_cast<i64>(rand_below(rng, static_cast<u64>(n)));
      std::sort(col.begin(), col.end());
    }
    for (i64 i = 0; i < batch; ++i) {
      Point p(static_cast<std::size_t>(d));
      for (int j = 0; j < d; ++j)
        p[static_cast<std::size_t>(j)] = cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
      pts.insert(p);
    }
    // Merging two chains need not be a chain, so rebuild from the union's
    // sorted columns instead.
    if (static_cast<i64>(pts.size()) > n || rounds > 0) {
      std::vector<std::vector<i64>> merged(static_cast<std::size_t>(d));
      for (const auto& p : pts)
        for (int j = 0; j < d; ++j)
          merged[static_cast<std::size_t>(j)].push_back(p[static_cast<std::size_t>(j)]);
      for (auto& col : merged) std::sort(col.begin(), col.end());
      pts.clear();
      for (std::size_t i = 0; i < merged[0].size(); ++i) {
        Point p(static_cast<std::size_t>(d));
        for (int j = 0; j < d; ++j)
          p[static_cast<std::size_t>(j)] = merged[static_cast<std::size_t>(j)][i];
        pts.insert(p);
      }
    }
    ++rounds;
  }
  std::vector<Point> out(pts.begin(), pts.end());
  if (static_cast<i64>(out.size()) > n) out.resize(static_cast<std::size_t>(n));
  PointSet ps = PointSet::from_points(d, n, out);
  if (!is_monotone(ps)) throw std::runtime_error("gen_monotone: postcondition failed");
  return ps;
}

ClusteredInstance gen_clustered(i64 n, i64 K, i64 L, u64 seed) {
  if (n < 1 || K < 1 || L < 1)
    throw std::invalid_argument("gen_clustered: need n, K, L >= 1");
  if (n > K * L)
    throw std::invalid_argument("gen_clustered: n points cannot fit K*L slots");
  Rng rng(seed);
  i64 slots = std::max<i64>(2 * K, K + 1);
  i64 universe = slots * L;

  std::vector<i64> starts;
  {
    std::set<i64> chosen;
    while (static_cast<i64>(chosen.size()) < K)
      chosen.insert(static_cast<i64>(rand_below(rng, static_cast<u64>(slots))) * L);
    starts.assign(chosen.begin(), chosen.end());
  }

  std::set<i64> vals;
  i64 guard = 0;
  while (static_cast<i64>(vals.size()) < n && guard < 64 * n + 1024) {
    i64 c = starts[static_cast<std::size_t>(rand_below(rng, static_cast<u64>(K)))];
    vals.insert(c + static_cast<i64>(rand_below(rng, static_cast<u64>(L))));
    ++guard;
  }
  // Deterministic fill if rejection sampling stalls on dense clusters.
  for (i64 s : starts) {
    if (static_cast<i64>(vals.size()) >= n) break;
    for (i64 off = 0; off < L && static_cast<i64>(vals.size()) < n; ++off)
      vals.insert(s + off);
  }

  ClusteredInstance inst;
  inst.points = PointSet::from_values(universe, {vals.begin(), vals.end()});
  i64 max_occ = 0;
  for (i64 s : starts) {
    i64 occ = 0;
    for (i64 v : vals)
      if (v >= s && v < s + L) ++occ;
    max_occ = std::max(max_occ, occ);
  }
  inst.desc = ClusterDesc{K, L, max_occ};
  return inst;
}

std::vector<i64> gen_bounded_monotone_seq(i64 n, i64 c, u64 seed) {
  if (n < 1 || c < 1) throw std::invalid_argument("gen_bounded_monotone_seq: need n, c >= 1");
  Rng rng(seed);
  std::vector<i64> vals(static_cast<std::size_t>(n));
  for (auto& v : vals) v = static_cast<i64>(rand_below(rng, static_cast<u64>(c * n)));
  std::sort(vals.begin(), vals.end());
  return vals;
}

std::string gen_string(i64 n, int alphabet, u64 seed) {
  if (n < 1 || alphabet < 1 || alphabet > 10)
    throw std::invalid_argument("gen_string: need n >= 1 and alphabet in [1,10]");
  Rng rng(seed);
  std::string s(static_cast<std::size_t>(n), '0');
  for (auto& ch : s)
    ch = static_cast<char>('0' + rand_below(rng, static_cast<u64>(alphabet)));
  return s;
}

}  // namespace sumkit
