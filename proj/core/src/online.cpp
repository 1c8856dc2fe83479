#include "sumkit/online.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sumkit/hash_family.hpp"
#include "sumkit/hist.hpp"
#include "sumkit/ntt.hpp"
#include "sumkit/sumset.hpp"

namespace sumkit {

namespace {

double online_alpha(i64 k_a, i64 k_b, i64 m_a, i64 m_b, i64 L, i64 P) {
  double t1 = std::pow(static_cast<double>(m_a) * m_b *
                           std::pow(static_cast<double>(P), 3.0) /
                           (static_cast<double>(k_a) * k_b * static_cast<double>(L)),
                       1.0 / 7.0);
  double t2 = std::pow(static_cast<double>(k_b) * m_a * m_b, 1.0 / 6.0);
  double inv = std::max(1.0, std::min(t1, t2));
  return 1.0 / inv;
}

}  // namespace

OnlineStruct OnlineStruct::build(const PointSet& A, const PointSet& B,
                                 const GridConfig& g, i64 P,
                                 std::optional<double> alpha, u64 seed,
                                 WorkCounter* wc) {
  if (A.dim() != B.dim() || A.dim() != g.dim)
    throw std::invalid_argument("OnlineStruct: dimension mismatch");
  if (P < 1) throw std::invalid_argument("OnlineStruct: P must be >= 1");
  OnlineStruct st;
  st.grid_ = g;
  st.P_ = P;
  st.sum_limit_ = A.universe() + B.universe();
  if (A.empty() || B.empty()) return st;

  WorkCounter local;
  WorkCounter& w = wc ? *wc : local;
  Rng rng(seed);
  CellCodec codec(g);

  auto parts_a = align_decompose(A, g);
  auto parts_b = align_decompose(B, g);
  int d = g.dim;
  for (const auto& pa : parts_a) {
    for (const auto& pb : parts_b) {
      Part part(codec);
      part.delta.resize(static_cast<std::size_t>(d));
      for (int j = 0; j < d; ++j)
        part.delta[static_cast<std::size_t>(j)] =
            pa.shift[static_cast<std::size_t>(j)] +
            pb.shift[static_cast<std::size_t>(j)];

      auto group = [&](const PointSet& ps, FlatMap<i64>& ids,
                       std::vector<std::vector<i64>>& vals,
                       std::vector<i64>& codes) {
        for (std::size_t i = 0; i < ps.size(); ++i) {
          auto p = ps.point(i);
          i64 code = codec.encode(cell_of(p, g));
          i64& id = ids[code];
          if (id == 0) {
            vals.emplace_back();
            codes.push_back(code);
            id = static_cast<i64>(vals.size());
          }
          vals[static_cast<std::size_t>(id - 1)].push_back(flatten_point(p, g));
        }
        for (auto& v : vals) std::sort(v.begin(), v.end());
      };
      std::vector<i64> a_codes, b_codes;
      group(pa.subset, part.a_cells, part.a_cell_vals, a_codes);
      group(pb.subset, part.b_cells, part.b_cell_vals, b_codes);
      w.bsg_ops += pa.subset.size() + pb.subset.size();

      // Step 0: every cell pair goes into the bucket of its cell sum.
      for (i64 ca : a_codes)
        for (i64 cb : b_codes) {
          i64& id = part.buckets[ca + cb];
          if (id == 0) {
            part.bucket_pairs.emplace_back();
            id = static_cast<i64>(part.bucket_pairs.size());
          }
          part.bucket_pairs[static_cast<std::size_t>(id - 1)].emplace_back(ca, cb);
        }
      w.bsg_ops += static_cast<u64>(a_codes.size()) * b_codes.size();

      std::vector<i64> s_star;
      part.buckets.for_each([&](i64 code, const i64& id) {
        if (static_cast<i64>(part.bucket_pairs[static_cast<std::size_t>(id - 1)].size()) > P)
          s_star.push_back(code);
      });
      for (i64 c : s_star) part.high_cells.insert(c);

      if (!s_star.empty()) {
        i64 k_a = static_cast<i64>(a_codes.size());
        i64 k_b = static_cast<i64>(b_codes.size());
        i64 m_a = 0, m_b = 0;
        for (auto& v : part.a_cell_vals) m_a = std::max<i64>(m_a, static_cast<i64>(v.size()));
        for (auto& v : part.b_cell_vals) m_b = std::max<i64>(m_b, static_cast<i64>(v.size()));
        double a_param =
            alpha.value_or(online_alpha(k_a, k_b, m_a, m_b, g.cell_volume(), P));

        BsgCover cover = bsg_cover(a_codes, b_codes, s_star, a_param,
                                   BsgVariant::rand, rng, &w, false);

        std::vector<i64> list;
        // Step 1: remainder cell pairs generate their lists naively.
        for (auto& [ca, cb] : cover.remainder) {
          const i64* ia = part.a_cells.find(ca);
          const i64* ib = part.b_cells.find(cb);
          const auto& av = part.a_cell_vals[static_cast<std::size_t>(*ia - 1)];
          const auto& bv = part.b_cell_vals[static_cast<std::size_t>(*ib - 1)];
          w.pair_ops += av.size() * bv.size();
          for (i64 x : av)
            for (i64 y : bv) list.push_back(x + y);
        }
        // Step 2: biclique sumsets, brute or hashed-FFT, pruned to S* cells.
        i64 vol = g.cell_volume();
        i64 flat_universe = flatten_sum_universe(g);
        for (const Biclique& bc : cover.bicliques) {
          std::vector<i64> fa, fb;
          for (i64 code : bc.a_vals) {
            const i64* id = part.a_cells.find(code);
            if (id) {
              const auto& v = part.a_cell_vals[static_cast<std::size_t>(*id - 1)];
              fa.insert(fa.end(), v.begin(), v.end());
            }
          }
          for (i64 code : bc.b_vals) {
            const i64* id = part.b_cells.find(code);
            if (id) {
              const auto& v = part.b_cell_vals[static_cast<std::size_t>(*id - 1)];
              fb.insert(fb.end(), v.begin(), v.end());
            }
          }
          if (fa.empty() || fb.empty()) continue;
          u64 brute_cost = static_cast<u64>(fa.size()) * fb.size();
          unsigned __int128 t_pts128 =
              static_cast<unsigned __int128>(bc.sumset.size()) *
              static_cast<unsigned __int128>(vol);
          bool use_fft = false;
          u64 fft_cost = 0;
          if (t_pts128 <= (u64(1) << 22)) {
            i64 t_pts = static_cast<i64>(t_pts128);
            i64 pool = family_pool_bound(t_pts, flat_universe, 4.0);
            i64 conv_len = 2 * std::min(pool, flat_universe);
            if (conv_len <= kDenseCap) {
              double k_est = flat_universe <= pool
                                 ? 1.0
                                 : std::log2(static_cast<double>(std::max<i64>(t_pts, 2))) + 1.0;
              fft_cost = static_cast<u64>(k_est * 3.0 * conv_len) +
                         static_cast<u64>(4 * t_pts);
              use_fft = fft_cost < brute_cost;
            }
          }
          if (use_fft) {
            std::vector<i64> tvals;
            for (i64 code : bc.sumset) {
              // Only high-popularity cells survive the prune; skip the rest.
              if (!part.high_cells.contains(code)) continue;
              i64 base = code * vol;
              for (i64 r = 0; r < vol; ++r) tvals.push_back(base + r);
            }
            if (tvals.empty()) continue;
            SumsetOptions opt;
            opt.debug_check = false;
            PointSet F = sumset_via_fft(
                PointSet::from_values(flat_universe, fa),
                PointSet::from_values(flat_universe, fb),
                PointSet::from_values(flat_universe, std::move(tvals)), opt,
                &rng, &w);
            for (i64 v : F.values()) list.push_back(v);
          } else {
            w.pair_ops += brute_cost;
            for (i64 x : fa)
              for (i64 y : fb) {
                i64 sum = x + y;
                if (part.high_cells.contains(sum / vol)) list.push_back(sum);
              }
          }
        }
        // Step 3: prune to high-popularity cells and dedup.
        std::vector<i64> pruned;
        pruned.reserve(list.size());
        for (i64 v : list)
          if (part.high_cells.contains(v / vol)) pruned.push_back(v);
        std::sort(pruned.begin(), pruned.end());
        pruned.erase(std::unique(pruned.begin(), pruned.end()), pruned.end());
        part.pruned_list = std::move(pruned);
      }

      st.parts_.push_back(std::move(part));
    }
  }
  return st;
}

bool OnlineStruct::query(std::span<const i64> s, QueryStats* stats) const {
  if (static_cast<int>(s.size()) != grid_.dim)
    throw std::invalid_argument("OnlineStruct::query: dimension mismatch");
  Point shifted(s.size());
  for (const Part& part : parts_) {
    bool in_range = true;
    for (std::size_t j = 0; j < s.size(); ++j) {
      shifted[j] = s[j] - part.delta[j];
      if (shifted[j] < 0 || shifted[j] >= sum_limit_) { in_range = false; break; }
    }
    if (!in_range) continue;
    i64 cell_code = part.codec.encode(
        cell_of(std::span<const i64>(shifted.data(), shifted.size()), grid_));
    i64 flat = flatten_point(std::span<const i64>(shifted.data(), shifted.size()),
                             grid_);
    const i64* bucket_id = part.buckets.find(cell_code);
    std::size_t pop = bucket_id ? part.bucket_pairs[static_cast<std::size_t>(*bucket_id - 1)].size()
                                : 0;
    if (static_cast<i64>(pop) <= P_) {
      if (stats) ++stats->low_queries;
      if (!bucket_id) continue;
      for (auto& [ca, cb] : part.bucket_pairs[static_cast<std::size_t>(*bucket_id - 1)]) {
        const i64* ia = part.a_cells.find(ca);
        const i64* ib = part.b_cells.find(cb);
        const auto& av = part.a_cell_vals[static_cast<std::size_t>(*ia - 1)];
        const auto& bv = part.b_cell_vals[static_cast<std::size_t>(*ib - 1)];
        // Iterate the smaller cell, binary-search the larger one.
        const auto& probe = av.size() <= bv.size() ? av : bv;
        const auto& lookup = av.size() <= bv.size() ? bv : av;
        for (i64 x : probe) {
          i64 need = flat - x;
          if (std::binary_search(lookup.begin(), lookup.end(), need)) return true;
        }
      }
    } else {
      if (stats) ++stats->high_queries;
      if (std::binary_search(part.pruned_list.begin(), part.pruned_list.end(),
                             flat))
        return true;
    }
  }
  return false;
}

std::vector<std::size_t> OnlineStruct::list_sizes() const {
  std::vector<std::size_t> out;
  for (const Part& p : parts_) out.push_back(p.pruned_list.size());
  return out;
}

OnlineTune tune_online(i64 n, int d, double delta) {
  if (n < 2 || d < 1 || delta <= 0.0)
    throw std::invalid_argument("tune_online: bad parameters");
  double nd = static_cast<double>(n);
  double q_exp = 1.0 / 3.0 - delta * (d + 13) / 6.0;
  double Q = std::pow(nd, q_exp);
  if (Q < 1.0)
    throw std::invalid_argument("tune_online: delta too large, Q < 1");
  OnlineTune t;
  t.ell = round_up_even(static_cast<i64>(std::ceil(std::pow(nd, delta / 2.0))));
  t.Q = Q;
  t.preprocessing_exponent = 2.0 - delta;
  t.query_exponent = 2.0 / 3.0 + delta * (d + 13) / 6.0;
  return t;
}

i64 popularity_from_tune(i64 k_a, i64 k_b, double Q) {
  double p = static_cast<double>(std::max(k_a, k_b)) / std::max(Q, 1.0);
  return std::max<i64>(1, static_cast<i64>(std::ceil(p)));
}

HistOnline HistOnline::build(const std::string& s, int alphabet, double delta,
                             u64 seed, WorkCounter* wc) {
  HistOnline ho;
  auto prefixes = prefix_counts(s, alphabet);
  ho.total_ = prefixes.back();
  i64 uni = static_cast<i64>(s.size()) + 1;
  PointSet A = PointSet::from_points(alphabet, uni, prefixes);
  std::vector<Point> b_pts;
  for (const Point& a : prefixes) {
    Point b(a.size());
    for (std::size_t c = 0; c < a.size(); ++c) b[c] = ho.total_[c] - a[c];
    b_pts.push_back(std::move(b));
  }
  PointSet B = PointSet::from_points(alphabet, uni, b_pts);

  OnlineTune tune = tune_online(std::max<i64>(uni, 2), alphabet, delta);
  i64 side = std::min<i64>(tune.ell, round_up_even(uni));
  GridConfig g(side, std::max(uni, side), alphabet);
  CellCodec codec(g);
  FlatSet seen_a, seen_b;
  i64 cells_a = 0, cells_b = 0;
  for (std::size_t i = 0; i < A.size(); ++i) {
    i64 code = codec.encode(cell_of(A.point(i), g));
    if (!seen_a.contains(code)) { seen_a.insert(code); ++cells_a; }
  }
  for (std::size_t i = 0; i < B.size(); ++i) {
    i64 code = codec.encode(cell_of(B.point(i), g));
    if (!seen_b.contains(code)) { seen_b.insert(code); ++cells_b; }
  }
  i64 P = popularity_from_tune(cells_a, cells_b, tune.Q);
  ho.core_ = OnlineStruct::build(A, B, g, P, {}, seed, wc);
  return ho;
}

bool HistOnline::query(const Point& v, QueryStats* stats) const {
  if (v.size() != total_.size())
    throw std::invalid_argument("HistOnline::query: malformed vector");
  Point s(v.size());
  for (std::size_t c = 0; c < v.size(); ++c) {
    if (v[c] < 0 || v[c] > total_[c]) return false;
    s[c] = v[c] + total_[c];
  }
  return core_.query(s, stats);
}

}  // namespace sumkit
