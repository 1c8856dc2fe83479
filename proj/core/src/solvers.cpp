#include "sumkit/solvers.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

#include "sumkit/hash_family.hpp"
#include "sumkit/ntt.hpp"
#include "sumkit/sumset.hpp"

namespace sumkit {

namespace {

using u32 = std::uint32_t;
using HitSet = std::set<Point>;
using WitnessMap = std::map<Point, std::pair<Point, Point>>;

// Injective encoding of points with coordinates < base.
struct PointCodec {
  int dim;
  i64 base;
  PointCodec(int d, i64 b) : dim(d), base(b) {
    unsigned __int128 top = 1;
    for (int j = 0; j < d; ++j) {
      top *= static_cast<unsigned __int128>(b);
      if (top > static_cast<unsigned __int128>(std::numeric_limits<i64>::max()))
        throw std::overflow_error("point encoding overflows 64 bits");
    }
  }
  i64 encode(std::span<const i64> p) const {
    i64 code = 0, w = 1;
    for (int j = 0; j < dim; ++j) {
      code += p[static_cast<std::size_t>(j)] * w;
      w *= base;
    }
    return code;
  }
};

Point add_points(std::span<const i64> a, std::span<const i64> b) {
  Point p(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) p[j] = a[j] + b[j];
  return p;
}

void record_hit(HitSet& hits, WitnessMap& wit, bool want_wit, Point s,
                std::span<const i64> a, std::span<const i64> b) {
  if (want_wit && !wit.count(s))
    wit.emplace(s, std::make_pair(Point(a.begin(), a.end()),
                                  Point(b.begin(), b.end())));
  hits.insert(std::move(s));
}

// Drop points of S that cannot be sums because some coordinate reaches
// past max(A)+max(B).
PointSet clip_to_sum_range(const PointSet& S, i64 sum_universe) {
  if (S.universe() <= sum_universe) return S;
  std::vector<i64> flat;
  for (std::size_t i = 0; i < S.size(); ++i) {
    auto p = S.point(i);
    bool ok = true;
    for (i64 c : p)
      if (c >= sum_universe) { ok = false; break; }
    if (ok) flat.insert(flat.end(), p.begin(), p.end());
  }
  return PointSet(S.dim(), sum_universe, std::move(flat));
}

void brute_into(const PointSet& A, const PointSet& B, const PointSet& S,
                WorkCounter& wc, HitSet& hits, WitnessMap& wit, bool want_wit) {
  if (A.empty() || B.empty() || S.empty()) {
    wc.pair_ops += static_cast<u64>(A.size()) * B.size();
    return;
  }
  PointCodec pc(S.dim(), std::max(S.universe(), A.universe() + B.universe()));
  FlatSet s_set;
  for (std::size_t i = 0; i < S.size(); ++i) s_set.insert(pc.encode(S.point(i)));
  Point sum(static_cast<std::size_t>(A.dim()));
  for (std::size_t i = 0; i < A.size(); ++i) {
    auto a = A.point(i);
    for (std::size_t j = 0; j < B.size(); ++j) {
      auto b = B.point(j);
      i64 code = 0, w = 1;
      for (int t = 0; t < A.dim(); ++t) {
        sum[static_cast<std::size_t>(t)] =
            a[static_cast<std::size_t>(t)] + b[static_cast<std::size_t>(t)];
        code += sum[static_cast<std::size_t>(t)] * w;
        w *= pc.base;
      }
      if (s_set.contains(code)) record_hit(hits, wit, want_wit, sum, a, b);
    }
  }
  wc.pair_ops += static_cast<u64>(A.size()) * B.size();
}

ThreeSumResult finish(const PointSet& S, HitSet& hits, WitnessMap& wit,
                      bool want_wit, WorkCounter wc) {
  ThreeSumResult res;
  std::vector<Point> pts(hits.begin(), hits.end());
  res.hits = PointSet::from_points(S.dim(), S.universe(), pts);
  if (want_wit) {
    for (std::size_t i = 0; i < res.hits.size(); ++i)
      res.witnesses.push_back(wit.at(res.hits.point_vec(i)));
  }
  res.work = wc;
  return res;
}

// ---------------------------------------------------------------------------
// Shared cell-level context for the grid solvers: groups the three point sets
// by grid cell, runs the BSG cover over the cell codes, and executes Step 2
// (per-biclique sumsets) with a brute-vs-hashed-FFT cost crossover.
// ---------------------------------------------------------------------------

struct CellCtx {
  GridConfig grid;
  CellCodec codec;
  const PointSet& A;
  const PointSet& B;
  const PointSet& S;
  std::vector<i64> a_flat, b_flat, s_flat;  // flattened point codes
  FlatSet s_hash;                           // flattened S membership
  std::vector<i64> a_codes, b_codes, s_codes;
  FlatMap<i64> a_cell_id, b_cell_id, s_cell_id;
  std::vector<std::vector<u32>> a_cell_pts, b_cell_pts, s_cell_pts;

  CellCtx(const GridConfig& g, const PointSet& a, const PointSet& b,
          const PointSet& s, WorkCounter& wc)
      : grid(g), codec(g), A(a), B(b), S(s) {
    group(a, a_flat, a_codes, a_cell_id, a_cell_pts);
    group(b, b_flat, b_codes, b_cell_id, b_cell_pts);
    group(s, s_flat, s_codes, s_cell_id, s_cell_pts);
    for (i64 f : s_flat) s_hash.insert(f);
    wc.bsg_ops += a.size() + b.size() + s.size();
  }

  void group(const PointSet& ps, std::vector<i64>& flat, std::vector<i64>& codes,
             FlatMap<i64>& ids, std::vector<std::vector<u32>>& cell_pts) {
    flat.resize(ps.size());
    for (std::size_t i = 0; i < ps.size(); ++i) {
      auto p = ps.point(i);
      flat[i] = flatten_point(p, grid);
      CellLabel c = cell_of(p, grid);
      i64 code = codec.encode(c);
      i64& id = ids[code];
      if (id == 0) {
        cell_pts.emplace_back();
        codes.push_back(code);
        id = static_cast<i64>(cell_pts.size());
      }
      cell_pts[static_cast<std::size_t>(id - 1)].push_back(static_cast<u32>(i));
    }
  }

  const std::vector<u32>* cell_points(const FlatMap<i64>& ids,
                                      const std::vector<std::vector<u32>>& pts,
                                      i64 code) const {
    const i64* id = ids.find(code);
    if (!id || *id == 0) return nullptr;
    return &pts[static_cast<std::size_t>(*id - 1)];
  }

};

void biclique_step(CellCtx& ctx, const Biclique& bc, const SolveParams& params,
                   Rng& rng, WorkCounter& wc, HitSet& hits, WitnessMap& wit) {
  std::vector<u32> aidx, bidx, sidx;
  for (i64 code : bc.a_vals) {
    auto* v = ctx.cell_points(ctx.a_cell_id, ctx.a_cell_pts, code);
    if (v) aidx.insert(aidx.end(), v->begin(), v->end());
  }
  for (i64 code : bc.b_vals) {
    auto* v = ctx.cell_points(ctx.b_cell_id, ctx.b_cell_pts, code);
    if (v) bidx.insert(bidx.end(), v->begin(), v->end());
  }
  for (i64 code : bc.sumset) {
    auto* v = ctx.cell_points(ctx.s_cell_id, ctx.s_cell_pts, code);
    if (v) sidx.insert(sidx.end(), v->begin(), v->end());
  }
  if (aidx.empty() || bidx.empty() || sidx.empty()) return;

  u64 brute_cost = static_cast<u64>(aidx.size()) * bidx.size();

  i64 vol = ctx.grid.cell_volume();
  bool fft_possible = true;
  u64 fft_cost = std::numeric_limits<u64>::max();
  i64 t_pts = 0;
  i64 flat_universe = 0;
  {
    unsigned __int128 tp = static_cast<unsigned __int128>(bc.sumset.size()) *
                           static_cast<unsigned __int128>(vol);
    if (tp > (u64(1) << 22)) {
      fft_possible = false;
    } else {
      t_pts = static_cast<i64>(tp);
      flat_universe = flatten_sum_universe(ctx.grid);
      i64 pool = family_pool_bound(t_pts, flat_universe, 4.0);
      i64 conv_len = 2 * std::min(pool, flat_universe);
      if (conv_len > kDenseCap) {
        fft_possible = false;
      } else {
        double k_est = flat_universe <= pool
                           ? 1.0
                           : std::log2(static_cast<double>(std::max<i64>(t_pts, 2))) + 1.0;
        fft_cost = static_cast<u64>(k_est * 3.0 * static_cast<double>(conv_len)) +
                   static_cast<u64>(4 * t_pts);
      }
    }
  }

  if (fft_possible && fft_cost < brute_cost) {
    std::vector<i64> fa, fb;
    fa.reserve(aidx.size());
    fb.reserve(bidx.size());
    for (u32 i : aidx) fa.push_back(ctx.a_flat[i]);
    for (u32 i : bidx) fb.push_back(ctx.b_flat[i]);
    std::vector<i64> tvals;
    tvals.reserve(static_cast<std::size_t>(t_pts));
    for (i64 code : bc.sumset) {
      i64 base = code * vol;
      for (i64 r = 0; r < vol; ++r) tvals.push_back(base + r);
    }
    SumsetOptions opt;
    opt.mode = params.deterministic ? SumsetMode::deterministic
                                    : SumsetMode::randomized;
    opt.debug_check = false;
    PointSet F = sumset_via_fft(
        PointSet::from_values(flat_universe, std::move(fa)),
        PointSet::from_values(flat_universe, std::move(fb)),
        PointSet::from_values(flat_universe, std::move(tvals)), opt, &rng, &wc);
    FlatSet f_set(F.values());
    wc.pair_ops += sidx.size();
    for (u32 i : sidx) {
      if (!f_set.contains(ctx.s_flat[i])) continue;
      Point s = ctx.S.point_vec(i);
      if (params.witnesses) {
        // Recover one pair by probing the biclique's A side.
        FlatSet fb_set;
        for (u32 t : bidx) fb_set.insert(ctx.b_flat[t]);
        for (u32 t : aidx) {
          i64 need = ctx.s_flat[i] - ctx.a_flat[t];
          if (need >= 0 && fb_set.contains(need)) {
            Point a = ctx.A.point_vec(t);
            Point b = s;
            for (std::size_t j = 0; j < b.size(); ++j) b[j] -= a[j];
            record_hit(hits, wit, true, s, a, b);
            break;
          }
        }
      } else {
        hits.insert(std::move(s));
      }
    }
  } else {
    wc.pair_ops += brute_cost;
    for (u32 i : aidx) {
      auto a = ctx.A.point(i);
      i64 fa = ctx.a_flat[i];
      for (u32 j : bidx) {
        if (ctx.s_hash.contains(fa + ctx.b_flat[j])) {
          auto b = ctx.B.point(j);
          record_hit(hits, wit, params.witnesses, add_points(a, b), a, b);
        }
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Monotone solver (grid recursion).
// ---------------------------------------------------------------------------

void solve_mono_rec(const PointSet& A, const PointSet& B, const PointSet& S,
                    const SolveParams& params, int depth, Rng& rng,
                    WorkCounter& wc, HitSet& hits, WitnessMap& wit);

void solve_mono_part(const PointSet& Aal, const PointSet& Bal,
                     const PointSet& Sp, const GridConfig& g,
                     const SolveParams& params, int depth, Rng& rng,
                     WorkCounter& wc, HitSet& hits, WitnessMap& wit) {
  CellCtx ctx(g, Aal, Bal, Sp, wc);
  BsgCover cover = bsg_cover(ctx.a_codes, ctx.b_codes, ctx.s_codes, params.alpha,
                             params.deterministic ? BsgVariant::det : BsgVariant::rand,
                             rng, &wc, /*verify_retry=*/false);

  // Step 1: remainder cell pairs.
  bool recurse_deeper = g.side > params.brute_cutoff && depth + 1 < params.recurse;
  for (auto& [ca, cb] : cover.remainder) {
    auto* av = ctx.cell_points(ctx.a_cell_id, ctx.a_cell_pts, ca);
    auto* bv = ctx.cell_points(ctx.b_cell_id, ctx.b_cell_pts, cb);
    auto* sv = ctx.cell_points(ctx.s_cell_id, ctx.s_cell_pts, ca + cb);
    if (!av || !bv || !sv) continue;
    if (!recurse_deeper) {
      wc.pair_ops += static_cast<u64>(av->size()) * bv->size();
      for (u32 i : *av) {
        i64 fa = ctx.a_flat[i];
        auto a = Aal.point(i);
        for (u32 j : *bv) {
          if (ctx.s_hash.contains(fa + ctx.b_flat[j])) {
            auto b = Bal.point(j);
            record_hit(hits, wit, params.witnesses, add_points(a, b), a, b);
          }
        }
      }
    } else {
      // Recurse into the translated sub-universe [side]^d.
      int d = g.dim;
      CellLabel la = ctx.codec.decode(ca), ls = ctx.codec.decode(ca + cb);
      CellLabel lb = ctx.codec.decode(cb);
      auto translate = [&](const PointSet& src, const std::vector<u32>& idx,
                           const CellLabel& origin, i64 uni) {
        std::vector<i64> flat;
        flat.reserve(idx.size() * static_cast<std::size_t>(d));
        for (u32 i : idx) {
          auto p = src.point(i);
          for (int j = 0; j < d; ++j)
            flat.push_back(p[static_cast<std::size_t>(j)] -
                           origin[static_cast<std::size_t>(j)] * g.side);
        }
        return PointSet(d, uni, std::move(flat));
      };
      PointSet As = translate(Aal, *av, la, g.side);
      PointSet Bs = translate(Bal, *bv, lb, g.side);
      PointSet Ss = translate(Sp, *sv, ls, 2 * g.side);
      SolveParams sub = tune_monotone_params(g.side, d);
      sub.deterministic = params.deterministic;
      sub.witnesses = params.witnesses;
      sub.brute_cutoff = params.brute_cutoff;
      sub.recurse = params.recurse;
      HitSet sub_hits;
      WitnessMap sub_wit;
      solve_mono_rec(As, Bs, Ss, sub, depth + 1, rng, wc, sub_hits, sub_wit);
      for (const Point& h : sub_hits) {
        Point global = h;
        for (int j = 0; j < d; ++j)
          global[static_cast<std::size_t>(j)] +=
              ls[static_cast<std::size_t>(j)] * g.side;
        if (params.witnesses) {
          auto [wa, wb] = sub_wit.at(h);
          for (int j = 0; j < d; ++j) {
            wa[static_cast<std::size_t>(j)] += la[static_cast<std::size_t>(j)] * g.side;
            wb[static_cast<std::size_t>(j)] += lb[static_cast<std::size_t>(j)] * g.side;
          }
          record_hit(hits, wit, true, global, wa, wb);
        } else {
          hits.insert(global);
        }
      }
    }
  }

  // Step 2: biclique sumsets.
  for (const Biclique& bc : cover.bicliques)
    biclique_step(ctx, bc, params, rng, wc, hits, wit);
}

void solve_mono_rec(const PointSet& A, const PointSet& B, const PointSet& S,
                    const SolveParams& params, int depth, Rng& rng,
                    WorkCounter& wc, HitSet& hits, WitnessMap& wit) {
  if (A.empty() || B.empty() || S.empty()) return;
  i64 U = std::max(A.universe(), B.universe());
  if (U <= params.brute_cutoff || depth >= params.recurse ||
      static_cast<u64>(A.size()) * B.size() <= 1024 ||
      params.ell * 2 > U) {
    brute_into(A, B, S, wc, hits, wit, params.witnesses);
    return;
  }
  GridConfig g(params.ell, U, A.dim());
  PointSet Sc = clip_to_sum_range(S, A.universe() + B.universe());
  if (Sc.empty()) return;

  auto parts_a = align_decompose(A, g);
  auto parts_b = align_decompose(B, g);
  int d = A.dim();
  for (const auto& pa : parts_a) {
    for (const auto& pb : parts_b) {
      std::vector<i64> delta(static_cast<std::size_t>(d));
      for (int j = 0; j < d; ++j)
        delta[static_cast<std::size_t>(j)] =
            pa.shift[static_cast<std::size_t>(j)] + pb.shift[static_cast<std::size_t>(j)];
      std::vector<i64> flat;
      for (std::size_t i = 0; i < Sc.size(); ++i) {
        auto p = Sc.point(i);
        bool ok = true;
        for (int j = 0; j < d; ++j)
          if (p[static_cast<std::size_t>(j)] < delta[static_cast<std::size_t>(j)]) {
            ok = false;
            break;
          }
        if (!ok) continue;
        for (int j = 0; j < d; ++j)
          flat.push_back(p[static_cast<std::size_t>(j)] -
                         delta[static_cast<std::size_t>(j)]);
      }
      if (flat.empty()) continue;
      PointSet Sp(d, Sc.universe(), std::move(flat));
      HitSet part_hits;
      WitnessMap part_wit;
      solve_mono_part(pa.subset, pb.subset, Sp, g, params, depth, rng, wc,
                      part_hits, part_wit);
      for (const Point& h : part_hits) {
        Point global = h;
        for (int j = 0; j < d; ++j)
          global[static_cast<std::size_t>(j)] += delta[static_cast<std::size_t>(j)];
        if (params.witnesses) {
          auto [wa, wb] = part_wit.at(h);
          for (int j = 0; j < d; ++j) {
            wa[static_cast<std::size_t>(j)] += pa.shift[static_cast<std::size_t>(j)];
            wb[static_cast<std::size_t>(j)] += pb.shift[static_cast<std::size_t>(j)];
          }
          record_hit(hits, wit, true, global, wa, wb);
        } else {
          hits.insert(global);
        }
      }
    }
  }
}

}  // namespace

ThreeSumResult threesum_brute(const PointSet& A, const PointSet& B,
                              const PointSet& S, bool witnesses) {
  if (A.dim() != B.dim() || A.dim() != S.dim())
    throw std::invalid_argument("threesum: dimension mismatch");
  WorkCounter wc;
  HitSet hits;
  WitnessMap wit;
  brute_into(A, B, S, wc, hits, wit, witnesses);
  return finish(S, hits, wit, witnesses, wc);
}

ThreeSumResult threesum_fft(const PointSet& A, const PointSet& B,
                            const PointSet& S) {
  if (A.dim() != 1 || B.dim() != 1 || S.dim() != 1)
    throw std::invalid_argument("threesum_fft: 1D sets required");
  WorkCounter wc;
  HitSet hits;
  WitnessMap wit;
  if (!A.empty() && !B.empty() && !S.empty()) {
    PointSet sums = sumset_small_universe(A, B, &wc);
    FlatSet sum_set(sums.values());
    for (i64 s : S.values())
      if (sum_set.contains(s)) hits.insert(Point{s});
    wc.pair_ops += S.size();
  }
  return finish(S, hits, wit, false, wc);
}

SolveParams tune_monotone_params(i64 n, int d) {
  if (n < 2) throw std::invalid_argument("tune_monotone_params: need n >= 2");
  if (d < 1) throw std::invalid_argument("tune_monotone_params: need d >= 1");
  double dd = static_cast<double>(d);
  double z = (11.0 - dd + std::sqrt((dd - 11.0) * (dd - 11.0) + 48.0 * dd)) / 12.0;
  double x = 1.0 - z / 2.0;
  double y = x * z;
  SolveParams p;
  p.exponent = z;
  p.ell = round_up_even(static_cast<i64>(std::ceil(std::pow(static_cast<double>(n), x))));
  p.alpha = std::min(1.0, std::pow(static_cast<double>(n), -y));
  return p;
}

ThreeSumResult threesum_monotone(const PointSet& A, const PointSet& B,
                                 const PointSet& S,
                                 std::optional<SolveParams> params, u64 seed) {
  if (A.dim() != B.dim() || A.dim() != S.dim())
    throw std::invalid_argument("threesum_monotone: dimension mismatch");
  for (auto [name, set] : {std::pair<const char*, const PointSet*>{"A", &A},
                           {"B", &B},
                           {"S", &S}}) {
    auto viol = monotone_violation(*set);
    if (viol)
      throw std::invalid_argument(std::string("threesum_monotone: set ") + name +
                                  " is not monotone at coordinate " +
                                  std::to_string(*viol));
  }
  SolveParams p = params ? *params
                         : tune_monotone_params(
                               std::max<i64>(2, std::max(A.universe(), B.universe())),
                               A.dim());
  Rng rng(seed);
  WorkCounter wc;
  HitSet hits;
  WitnessMap wit;
  solve_mono_rec(A, B, S, p, 0, rng, wc, hits, wit);
  return finish(S, hits, wit, p.witnesses, wc);
}

double clustered_alpha(i64 ka, i64 kb, i64 ks, i64 L, i64 W) {
  double t1 = std::pow(static_cast<double>(ka) * kb * static_cast<double>(ka) * kb *
                           static_cast<double>(W) /
                           (static_cast<double>(ks) * ks * ks * static_cast<double>(L)),
                       1.0 / 7.0);
  double t2 = std::pow(static_cast<double>(kb) * static_cast<double>(W), 1.0 / 6.0);
  double inv = std::min(t1, t2);
  if (inv < 1.0) inv = 1.0;
  return 1.0 / inv;
}

std::vector<std::pair<PointSet, ClusterDesc>> equitable_decompose(
    const PointSet& s, const GridConfig& g) {
  std::vector<std::pair<PointSet, ClusterDesc>> out;
  if (s.empty()) return out;
  CellCodec codec(g);
  FlatMap<i64> cell_id;
  std::vector<std::vector<std::size_t>> cells;
  for (std::size_t i = 0; i < s.size(); ++i) {
    i64 code = codec.encode(cell_of(s.point(i), g));
    i64& id = cell_id[code];
    if (id == 0) {
      cells.emplace_back();
      id = static_cast<i64>(cells.size());
    }
    cells[static_cast<std::size_t>(id - 1)].push_back(i);
  }
  std::map<int, std::vector<std::size_t>> buckets;  // log2(occupancy) -> cell ids
  for (std::size_t c = 0; c < cells.size(); ++c) {
    int lvl = std::bit_width(cells[c].size()) - 1;
    buckets[lvl].push_back(c);
  }
  for (auto& [lvl, cell_ids] : buckets) {
    std::vector<i64> flat;
    i64 max_occ = 0;
    for (std::size_t c : cell_ids) {
      max_occ = std::max<i64>(max_occ, static_cast<i64>(cells[c].size()));
      for (std::size_t i : cells[c]) {
        auto p = s.point(i);
        flat.insert(flat.end(), p.begin(), p.end());
      }
    }
    ClusterDesc desc;
    desc.K = static_cast<i64>(cell_ids.size());
    desc.L = g.cell_volume();
    desc.M = max_occ;
    out.emplace_back(PointSet(s.dim(), s.universe(), std::move(flat)), desc);
  }
  return out;
}

namespace {

GridConfig clustered_grid(const ClusterDesc& desc, i64 universe, int d) {
  double root = std::pow(static_cast<double>(desc.L), 1.0 / d);
  i64 side = round_up_even(static_cast<i64>(std::ceil(root - 1e-9)));
  i64 uni = std::max(universe, side);
  return GridConfig(side, uni, d);
}

void audit_descriptor(const PointSet& s, const ClusterDesc& desc,
                      const GridConfig& g, const char* name) {
  if (s.empty()) return;
  CellCodec codec(g);
  FlatMap<i64> occ;
  for (std::size_t i = 0; i < s.size(); ++i)
    occ[codec.encode(cell_of(s.point(i), g))]++;
  i64 slack = i64(1) << g.dim;
  if (static_cast<i64>(occ.size()) > slack * desc.K)
    throw std::invalid_argument(std::string("threesum_clustered: set ") + name +
                                " occupies more grid cells than its descriptor allows");
  if (desc.M) {
    i64 cap = slack * *desc.M;
    bool bad = false;
    occ.for_each([&](i64, const i64& c) {
      if (c > cap) bad = true;
    });
    if (bad)
      throw std::invalid_argument(std::string("threesum_clustered: set ") + name +
                                  " has a cell denser than its descriptor allows");
  }
}

}  // namespace

ThreeSumResult threesum_clustered(const PointSet& A, const PointSet& B,
                                  const PointSet& S, const ClusterDesc& da,
                                  const ClusterDesc& db, const ClusterDesc& ds,
                                  std::optional<double> alpha, u64 seed,
                                  bool deterministic, bool witnesses) {
  if (A.dim() != B.dim() || A.dim() != S.dim())
    throw std::invalid_argument("threesum_clustered: dimension mismatch");
  WorkCounter wc;
  HitSet hits;
  WitnessMap wit;
  if (A.empty() || B.empty() || S.empty())
    return finish(S, hits, wit, witnesses, wc);

  int d = A.dim();
  i64 uni = std::max(A.universe(), B.universe());
  GridConfig g = clustered_grid(da, uni, d);
  audit_descriptor(A, da, g, "A");
  audit_descriptor(B, db, g, "B");
  audit_descriptor(S, ds, clustered_grid(ds, S.universe(), d), "S");

  i64 ma = da.M.value_or(static_cast<i64>(A.size()));
  i64 mb = db.M.value_or(static_cast<i64>(B.size()));
  i64 ms = ds.M.value_or(static_cast<i64>(S.size()));
  i64 W = std::min({ma * mb, ma * ms, mb * ms});
  double a = alpha.value_or(clustered_alpha(da.K, db.K, ds.K, g.cell_volume(), W));

  SolveParams params;
  params.ell = g.side;
  params.alpha = a;
  params.deterministic = deterministic;
  params.witnesses = witnesses;

  PointSet Sc = clip_to_sum_range(S, A.universe() + B.universe());
  if (Sc.empty()) return finish(S, hits, wit, witnesses, wc);

  Rng rng(seed);
  auto parts_a = align_decompose(A, g);
  auto parts_b = align_decompose(B, g);
  for (const auto& pa : parts_a) {
    for (const auto& pb : parts_b) {
      std::vector<i64> delta(static_cast<std::size_t>(d));
      for (int j = 0; j < d; ++j)
        delta[static_cast<std::size_t>(j)] =
            pa.shift[static_cast<std::size_t>(j)] + pb.shift[static_cast<std::size_t>(j)];
      std::vector<i64> flat;
      for (std::size_t i = 0; i < Sc.size(); ++i) {
        auto p = Sc.point(i);
        bool ok = true;
        for (int j = 0; j < d; ++j)
          if (p[static_cast<std::size_t>(j)] < delta[static_cast<std::size_t>(j)]) {
            ok = false;
            break;
          }
        if (!ok) continue;
        for (int j = 0; j < d; ++j)
          flat.push_back(p[static_cast<std::size_t>(j)] - delta[static_cast<std::size_t>(j)]);
      }
      if (flat.empty()) continue;
      PointSet Sp(d, Sc.universe(), std::move(flat));

      CellCtx ctx(g, pa.subset, pb.subset, Sp, wc);
      BsgCover cover =
          bsg_cover(ctx.a_codes, ctx.b_codes, ctx.s_codes, a,
                    deterministic ? BsgVariant::det : BsgVariant::rand, rng,
                    &wc, /*verify_retry=*/false);

      HitSet part_hits;
      WitnessMap part_wit;

      // Step 1: cheapest of the three brute pairings per remainder pair.
      for (auto& [ca, cb] : cover.remainder) {
        auto* av = ctx.cell_points(ctx.a_cell_id, ctx.a_cell_pts, ca);
        auto* bv = ctx.cell_points(ctx.b_cell_id, ctx.b_cell_pts, cb);
        auto* sv = ctx.cell_points(ctx.s_cell_id, ctx.s_cell_pts, ca + cb);
        if (!av || !bv || !sv) continue;
        u64 c_ab = static_cast<u64>(av->size()) * bv->size();
        u64 c_as = static_cast<u64>(av->size()) * sv->size();
        u64 c_bs = static_cast<u64>(bv->size()) * sv->size();
        if (c_ab <= c_as && c_ab <= c_bs) {
          wc.pair_ops += c_ab;
          for (u32 i : *av) {
            auto ap = pa.subset.point(i);
            i64 fa = ctx.a_flat[i];
            for (u32 j : *bv)
              if (ctx.s_hash.contains(fa + ctx.b_flat[j])) {
                auto bp = pb.subset.point(j);
                record_hit(part_hits, part_wit, witnesses, add_points(ap, bp), ap, bp);
              }
          }
        } else if (c_as <= c_bs) {
          wc.pair_ops += c_as;
          FlatSet bset;
          for (u32 j : *bv) bset.insert(ctx.b_flat[j]);
          for (u32 k : *sv) {
            i64 fs = ctx.s_flat[k];
            for (u32 i : *av) {
              i64 need = fs - ctx.a_flat[i];
              if (need >= 0 && bset.contains(need)) {
                Point s = Sp.point_vec(k);
                Point ap = pa.subset.point_vec(i);
                Point bp = s;
                for (std::size_t j = 0; j < bp.size(); ++j) bp[j] -= ap[j];
                record_hit(part_hits, part_wit, witnesses, s, ap, bp);
                break;
              }
            }
          }
        } else {
          wc.pair_ops += c_bs;
          FlatSet aset;
          for (u32 i : *av) aset.insert(ctx.a_flat[i]);
          for (u32 k : *sv) {
            i64 fs = ctx.s_flat[k];
            for (u32 j : *bv) {
              i64 need = fs - ctx.b_flat[j];
              if (need >= 0 && aset.contains(need)) {
                Point s = Sp.point_vec(k);
                Point bp = pb.subset.point_vec(j);
                Point ap = s;
                for (std::size_t t = 0; t < ap.size(); ++t) ap[t] -= bp[t];
                record_hit(part_hits, part_wit, witnesses, s, ap, bp);
                break;
              }
            }
          }
        }
      }

      // Step 2.
      for (const Biclique& bc : cover.bicliques)
        biclique_step(ctx, bc, params, rng, wc, part_hits, part_wit);

      for (const Point& h : part_hits) {
        Point global = h;
        for (int j = 0; j < d; ++j)
          global[static_cast<std::size_t>(j)] += delta[static_cast<std::size_t>(j)];
        if (witnesses) {
          auto [wa, wb] = part_wit.at(h);
          for (int j = 0; j < d; ++j) {
            wa[static_cast<std::size_t>(j)] += pa.shift[static_cast<std::size_t>(j)];
            wb[static_cast<std::size_t>(j)] += pb.shift[static_cast<std::size_t>(j)];
          }
          record_hit(hits, wit, true, global, wa, wb);
        } else {
          hits.insert(global);
        }
      }
    }
  }
  return finish(S, hits, wit, witnesses, wc);
}

ThreeSumResult threesum_one_clustered(const PointSet& A, const PointSet& B,
                                      const PointSet& S, const ClusterDesc& da,
                                      u64 seed, bool witnesses) {
  if (A.dim() != B.dim() || A.dim() != S.dim())
    throw std::invalid_argument("threesum_one_clustered: dimension mismatch");
  WorkCounter wc;
  HitSet hits;
  WitnessMap wit;
  if (A.empty() || B.empty() || S.empty())
    return finish(S, hits, wit, witnesses, wc);

  int d = A.dim();
  GridConfig ga = clustered_grid(da, A.universe(), d);
  audit_descriptor(A, da, ga, "A");

  auto da_parts = equitable_decompose(A, ga);
  auto db_parts = equitable_decompose(
      B, GridConfig(ga.side, std::max(B.universe(), ga.side), d));
  auto ds_parts = equitable_decompose(
      S, GridConfig(ga.side, std::max(S.universe(), ga.side), d));

  u64 sub_seed = seed;
  for (auto& [as, adesc] : da_parts) {
    for (auto& [bs, bdesc] : db_parts) {
      for (auto& [ss, sdesc] : ds_parts) {
        ThreeSumResult sub =
            threesum_clustered(as, bs, ss, adesc, bdesc, sdesc, {}, ++sub_seed,
                               false, witnesses);
        wc.merge(sub.work);
        for (std::size_t i = 0; i < sub.hits.size(); ++i) {
          Point h = sub.hits.point_vec(i);
          if (witnesses) {
            record_hit(hits, wit, true, h, sub.witnesses[i].first,
                       sub.witnesses[i].second);
          } else {
            hits.insert(h);
          }
        }
      }
    }
  }
  return finish(S, hits, wit, witnesses, wc);
}

}  // namespace sumkit
