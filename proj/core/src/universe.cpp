#include "sumkit/universe.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sumkit/sumset.hpp"

namespace sumkit {

namespace {

std::vector<i64> sorted_unique(std::vector<i64> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

bool subset_of(const std::vector<i64>& sub, const std::vector<i64>& super) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

std::vector<i64> intersect(const std::vector<i64>& a, const std::vector<i64>& b) {
  std::vector<i64> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

}  // namespace

void PreprocUniverse::build_families(u64 seed, WorkCounter* wc) {
  if (a0_.empty() || b0_.empty()) return;
  i64 universe = a0_.back() + b0_.back() + 1;
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  families_.reserve(cover_.bicliques.size());
  for (const Biclique& bc : cover_.bicliques)
    families_.push_back(build_family_randomized(bc.sumset, universe, rng, {}, wc));
}

PreprocUniverse PreprocUniverse::build(const std::vector<i64>& A0,
                                       const std::vector<i64>& B0,
                                       const std::vector<i64>& S0,
                                       std::optional<double> alpha, u64 seed,
                                       WorkCounter* wc) {
  PreprocUniverse pu;
  pu.a0_ = sorted_unique(A0);
  pu.b0_ = sorted_unique(B0);
  pu.s0_ = sorted_unique(S0);
  for (i64 v : pu.a0_)
    if (v < 0) throw std::invalid_argument("preproc_universe: negative values unsupported");
  for (i64 v : pu.b0_)
    if (v < 0) throw std::invalid_argument("preproc_universe: negative values unsupported");
  i64 n = static_cast<i64>(std::max({pu.a0_.size(), pu.b0_.size(), pu.s0_.size()}));
  pu.alpha_ = alpha.value_or(
      n >= 2 ? std::pow(static_cast<double>(n), -1.0 / 7.0) : 1.0);
  pu.t_ = 1.0;
  if (pu.a0_.empty() || pu.b0_.empty() || pu.s0_.empty()) return pu;
  Rng rng(seed);
  pu.cover_ = bsg_cover(pu.a0_, pu.b0_, pu.s0_, pu.alpha_, BsgVariant::rand, rng,
                        wc, /*verify_retry=*/true);
  pu.build_families(seed, wc);
  return pu;
}

PreprocUniverse PreprocUniverse::build_no_s(const std::vector<i64>& A0,
                                            const std::vector<i64>& B0,
                                            std::optional<double> t, u64 seed,
                                            WorkCounter* wc) {
  PreprocUniverse pu;
  pu.a0_ = sorted_unique(A0);
  pu.b0_ = sorted_unique(B0);
  for (i64 v : pu.a0_)
    if (v < 0) throw std::invalid_argument("preproc_universe: negative values unsupported");
  for (i64 v : pu.b0_)
    if (v < 0) throw std::invalid_argument("preproc_universe: negative values unsupported");
  pu.has_buckets_ = true;
  i64 n = static_cast<i64>(std::max(pu.a0_.size(), pu.b0_.size()));
  pu.t_ = t.value_or(n >= 2 ? std::pow(static_cast<double>(n), 0.1) : 1.0);
  pu.alpha_ = 1.0 / std::max(1.0, pu.t_);
  if (pu.a0_.empty() || pu.b0_.empty()) return pu;

  // Bucket every pair sum (quadratic space, as stored).
  FlatMap<i64> sum_id;
  for (i64 a : pu.a0_)
    for (i64 b : pu.b0_) {
      i64& id = sum_id[a + b];
      if (id == 0) {
        pu.bucket_pairs_.emplace_back();
        pu.bucket_sums_.push_back(a + b);
        id = static_cast<i64>(pu.bucket_pairs_.size());
      }
      pu.bucket_pairs_[static_cast<std::size_t>(id - 1)].emplace_back(a, b);
    }
  if (wc) wc->bsg_ops += static_cast<u64>(pu.a0_.size()) * pu.b0_.size();
  // Sort the sum index (ids move with it).
  std::vector<std::size_t> order(pu.bucket_sums_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return pu.bucket_sums_[x] < pu.bucket_sums_[y];
  });
  std::vector<i64> sums(order.size());
  std::vector<std::vector<std::pair<i64, i64>>> pairs(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    sums[i] = pu.bucket_sums_[order[i]];
    pairs[i] = std::move(pu.bucket_pairs_[order[i]]);
  }
  pu.bucket_sums_ = std::move(sums);
  pu.bucket_pairs_ = std::move(pairs);

  pu.pop_cutoff_ = std::max<i64>(1, static_cast<i64>(static_cast<double>(n) / pu.t_));
  for (std::size_t i = 0; i < pu.bucket_sums_.size(); ++i)
    if (static_cast<i64>(pu.bucket_pairs_[i].size()) > pu.pop_cutoff_)
      pu.s0_.push_back(pu.bucket_sums_[i]);

  if (!pu.s0_.empty()) {
    Rng rng(seed);
    pu.cover_ = bsg_cover(pu.a0_, pu.b0_, pu.s0_, pu.alpha_, BsgVariant::rand,
                          rng, wc, /*verify_retry=*/true);
    pu.build_families(seed, wc);
  }
  return pu;
}

ThreeSumResult PreprocUniverse::query(const std::vector<i64>& A,
                                      const std::vector<i64>& B,
                                      const std::vector<i64>& S) const {
  auto a = sorted_unique(A);
  auto b = sorted_unique(B);
  auto s = sorted_unique(S);
  if (!subset_of(a, a0_)) throw std::invalid_argument("query: A is not a subset of A0");
  if (!subset_of(b, b0_)) throw std::invalid_argument("query: B is not a subset of B0");
  if (!has_buckets_ && !subset_of(s, s0_))
    throw std::invalid_argument("query: S is not a subset of S0");

  ThreeSumResult res;
  WorkCounter& wc = res.work;
  std::vector<i64> hits;
  if (a.empty() || b.empty() || s.empty()) {
    res.hits = PointSet::from_values(1, {});
    return res;
  }
  FlatSet a_set(a), b_set(b), s_set(s);

  std::vector<i64> s_high;  // elements handled through the stored cover
  if (has_buckets_) {
    for (i64 v : s) {
      auto it = std::lower_bound(bucket_sums_.begin(), bucket_sums_.end(), v);
      std::size_t pop = 0;
      std::size_t idx = 0;
      if (it != bucket_sums_.end() && *it == v) {
        idx = static_cast<std::size_t>(it - bucket_sums_.begin());
        pop = bucket_pairs_[idx].size();
      }
      if (static_cast<i64>(pop) <= pop_cutoff_) {
        // Low popularity: scan the bucket.
        wc.pair_ops += pop;
        for (std::size_t k = 0; k < pop; ++k) {
          auto& [x, y] = bucket_pairs_[idx][k];
          if (a_set.contains(x) && b_set.contains(y)) {
            hits.push_back(v);
            break;
          }
        }
      } else {
        s_high.push_back(v);
      }
    }
  } else {
    s_high = s;
  }

  if (!s_high.empty() &&
      (!cover_.bicliques.empty() || !cover_.remainder.empty())) {
    FlatSet high_set(s_high);
    // Step 1: filter the remainder.
    wc.pair_ops += cover_.remainder.size();
    for (auto& [x, y] : cover_.remainder)
      if (a_set.contains(x) && b_set.contains(y) && high_set.contains(x + y) &&
          s_set.contains(x + y))
        hits.push_back(x + y);
    // Step 2: hashed sumsets of the intersected bicliques.
    for (std::size_t i = 0; i < cover_.bicliques.size(); ++i) {
      const Biclique& bc = cover_.bicliques[i];
      std::vector<i64> ai = intersect(bc.a_vals, a);
      if (ai.empty()) continue;
      std::vector<i64> bi = intersect(bc.b_vals, b);
      if (bi.empty()) continue;
      i64 uni = families_[i].universe;
      PointSet F = sumset_via_fft(PointSet::from_values(uni, ai),
                                  PointSet::from_values(uni, bi), families_[i],
                                  false, &wc);
      for (i64 v : F.values())
        if (high_set.contains(v) && s_set.contains(v)) hits.push_back(v);
    }
  }

  std::sort(hits.begin(), hits.end());
  hits.erase(std::unique(hits.begin(), hits.end()), hits.end());
  i64 uni = 1;
  if (!hits.empty()) uni = hits.back() + 1;
  if (!s.empty()) uni = std::max(uni, s.back() + 1);
  res.hits = PointSet::from_values(uni, std::move(hits));
  return res;
}

bool k13_weighted(const WeightedGraph& g, i64 W, u64 seed, WorkCounter* wc) {
  if (g.n != static_cast<i64>(g.weight.size()) ||
      g.n != static_cast<i64>(g.adj.size()))
    throw std::invalid_argument("k13_weighted: inconsistent graph");
  if (g.n == 0) return false;

  i64 wmin = *std::min_element(g.weight.begin(), g.weight.end());
  auto enc_a = [&](i64 w) { return 4 * (w - wmin) + 1; };
  auto enc_b = [&](i64 w) { return 4 * (w - wmin) + 2; };
  auto enc_s = [&](i64 target) { return 4 * target + 3; };  // target pre-shifted

  std::vector<i64> A0, B0, S0;
  for (i64 v = 0; v < g.n; ++v) {
    A0.push_back(enc_a(g.weight[static_cast<std::size_t>(v)]));
    B0.push_back(enc_b(g.weight[static_cast<std::size_t>(v)]));
  }
  for (i64 u = 0; u < g.n; ++u)
    for (i64 v = 0; v < g.n; ++v) {
      i64 target = W - g.weight[static_cast<std::size_t>(u)] -
                   g.weight[static_cast<std::size_t>(v)] - 2 * wmin;
      if (target >= 0) S0.push_back(enc_s(target));
    }
  if (S0.empty()) return false;

  PreprocUniverse pu = PreprocUniverse::build(A0, B0, S0, {}, seed, wc);

  for (i64 u = 0; u < g.n; ++u) {
    const auto& nbrs = g.adj[static_cast<std::size_t>(u)];
    if (nbrs.size() < 3) continue;
    std::vector<i64> qa, qb, qs;
    std::vector<i64> wts;
    for (i64 v : nbrs) {
      i64 w = g.weight[static_cast<std::size_t>(v)];
      wts.push_back(w);
      qa.push_back(enc_a(w));
      qb.push_back(enc_b(w));
      i64 target = W - g.weight[static_cast<std::size_t>(u)] - w - 2 * wmin;
      if (target >= 0) qs.push_back(enc_s(target));
    }
    if (qs.empty()) continue;
    ThreeSumResult res = pu.query(qa, qb, qs);
    if (wc) wc->merge(res.work);
    if (res.hits.empty()) continue;

    // Validate each candidate against neighbor-weight multiplicities so that
    // v1, v2, v3 are three distinct vertices.
    FlatMap<i64> count;
    for (i64 w : wts) count[w]++;
    std::vector<i64> distinct = sorted_unique(wts);
    i64 base = W - g.weight[static_cast<std::size_t>(u)];
    for (i64 hit : res.hits.values()) {
      i64 pair_sum = (hit - 3) / 4 + 2 * wmin;  // w(v1) + w(v2)
      i64 w3 = base - pair_sum;
      const i64* c3 = count.find(w3);
      if (!c3 || *c3 == 0) continue;
      for (i64 w1 : distinct) {
        i64 w2 = pair_sum - w1;
        const i64* c1 = count.find(w1);
        const i64* c2 = count.find(w2);
        if (!c1 || !c2) continue;
        auto need = [&](i64 w) {
          return static_cast<i64>(w1 == w) + static_cast<i64>(w2 == w) +
                 static_cast<i64>(w3 == w);
        };
        if (*c1 >= need(w1) && *c2 >= need(w2) && *c3 >= need(w3)) return true;
      }
    }
  }
  return false;
}

}  // namespace sumkit
