#include "sumkit/hist.hpp"

#include <algorithm>
#include <stdexcept>

#include "sumkit/minplus.hpp"
#include "sumkit/solvers.hpp"

namespace sumkit {

std::vector<Point> prefix_counts(const std::string& s, int alphabet) {
  std::vector<Point> prefixes;
  prefixes.reserve(s.size() + 1);
  Point cur(static_cast<std::size_t>(alphabet), 0);
  prefixes.push_back(cur);
  for (char ch : s) {
    int c = ch - '0';
    if (c < 0 || c >= alphabet)
      throw std::invalid_argument("prefix_counts: character outside alphabet");
    ++cur[static_cast<std::size_t>(c)];
    prefixes.push_back(cur);
  }
  return prefixes;
}

HistIndex histindex_build_binary(const std::string& s, u64 seed,
                                 WorkCounter* wc) {
  for (char ch : s)
    if (ch != '0' && ch != '1')
      throw std::invalid_argument("histindex: input is not a binary string");
  i64 n = static_cast<i64>(s.size());
  HistIndex idx;
  idx.n = n;
  idx.min_ones.assign(static_cast<std::size_t>(n) + 1, 0);
  idx.max_ones.assign(static_cast<std::size_t>(n) + 1, 0);
  if (n == 0) return idx;

  // Prefix 1-counts p_0..p_n; u_i = p_i and w_j = p_n - p_{n-j} are both
  // non-decreasing, and min_{i+j=n+k}(u_i + w_j) = p_n + min_i(p_i - p_{i-k}).
  // The same convolution at index n-k yields the maximum after negation.
  std::vector<i64> p(static_cast<std::size_t>(n) + 1, 0);
  for (i64 i = 0; i < n; ++i)
    p[static_cast<std::size_t>(i) + 1] =
        p[static_cast<std::size_t>(i)] + (s[static_cast<std::size_t>(i)] == '1');
  std::vector<i64> w(static_cast<std::size_t>(n) + 1);
  for (i64 j = 0; j <= n; ++j)
    w[static_cast<std::size_t>(j)] = p.back() - p[static_cast<std::size_t>(n - j)];

  std::vector<i64> conv = minplus_bounded_monotone(p, w, seed, wc);
  i64 pn = p.back();
  for (i64 k = 0; k <= n; ++k) {
    idx.min_ones[static_cast<std::size_t>(k)] =
        conv[static_cast<std::size_t>(n + k)] - pn;
    idx.max_ones[static_cast<std::size_t>(k)] =
        pn - conv[static_cast<std::size_t>(n - k)];
  }
  return idx;
}

bool histindex_query(const HistIndex& idx, i64 zeros, i64 ones) {
  if (zeros < 0 || ones < 0) return false;
  i64 k = zeros + ones;
  if (k > idx.n) return false;
  return idx.min_ones[static_cast<std::size_t>(k)] <= ones &&
         ones <= idx.max_ones[static_cast<std::size_t>(k)];
}

std::vector<char> hist_offline_queries(const std::string& s, int alphabet,
                                       const std::vector<Point>& queries,
                                       u64 seed, WorkCounter* wc) {
  if (alphabet < 1)
    throw std::invalid_argument("hist_offline_queries: bad alphabet size");
  i64 n = static_cast<i64>(s.size());
  auto prefixes = prefix_counts(s, alphabet);
  const Point& total = prefixes.back();

  std::vector<char> answers(queries.size(), 0);
  // Sums live around a_n + q; collect the distinct valid query targets.
  std::vector<Point> targets;
  std::vector<std::size_t> target_of(queries.size(), static_cast<std::size_t>(-1));
  for (std::size_t qi = 0; qi < queries.size(); ++qi) {
    const Point& q = queries[qi];
    if (static_cast<int>(q.size()) != alphabet)
      throw std::invalid_argument("hist_offline_queries: malformed query vector");
    bool feasible = true;
    for (std::size_t c = 0; c < q.size(); ++c)
      if (q[c] < 0 || q[c] > total[c]) { feasible = false; break; }
    if (!feasible) continue;
    Point t(q.size());
    for (std::size_t c = 0; c < q.size(); ++c) t[c] = q[c] + total[c];
    target_of[qi] = targets.size();
    targets.push_back(std::move(t));
  }
  if (targets.empty()) return answers;

  i64 uni = n + 1;
  PointSet A = PointSet::from_points(alphabet, uni, prefixes);
  std::vector<Point> b_pts;
  b_pts.reserve(prefixes.size());
  for (const Point& a : prefixes) {
    Point b(a.size());
    for (std::size_t c = 0; c < a.size(); ++c) b[c] = total[c] - a[c];
    b_pts.push_back(std::move(b));
  }
  PointSet B = PointSet::from_points(alphabet, uni, b_pts);
  PointSet S = PointSet::from_points(alphabet, 2 * uni, targets);

  // Only A and B are monotone; run the one-set-clustered route over A's grid.
  SolveParams tuned = tune_monotone_params(std::max<i64>(uni, 2), alphabet);
  GridConfig g(std::min(tuned.ell, uni), uni, alphabet);
  CellCodec codec(g);
  FlatSet seen;
  i64 cells = 0;
  for (std::size_t i = 0; i < A.size(); ++i) {
    i64 code = codec.encode(cell_of(A.point(i), g));
    if (!seen.contains(code)) { seen.insert(code); ++cells; }
  }
  ClusterDesc da{std::max<i64>(cells, 1), g.cell_volume(), {}};

  ThreeSumResult res = threesum_one_clustered(A, B, S, da, seed);
  if (wc) wc->merge(res.work);

  FlatSet hit_codes;
  i64 base = 2 * uni + 1;
  auto encode = [&](const Point& p) {
    i64 code = 0, wgt = 1;
    for (i64 v : p) { code += v * wgt; wgt *= base; }
    return code;
  };
  for (std::size_t i = 0; i < res.hits.size(); ++i)
    hit_codes.insert(encode(res.hits.point_vec(i)));
  for (std::size_t qi = 0; qi < queries.size(); ++qi) {
    if (target_of[qi] == static_cast<std::size_t>(-1)) continue;
    answers[qi] = hit_codes.contains(encode(targets[target_of[qi]])) ? 1 : 0;
  }
  return answers;
}

}  // namespace sumkit
