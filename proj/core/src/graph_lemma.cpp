#include "sumkit/graph_lemma.hpp"

#include <cmath>
#include <stdexcept>

namespace sumkit {

namespace {

struct Thresholds {
  long double astar_min;   // alpha |A| / 4
  long double bad_cdeg;    // alpha^3 |B| / 2048
  long double degbad_max;  // alpha^2 |A| / 64
  Thresholds(double alpha, std::size_t na, std::size_t nb) {
    long double a = alpha;
    astar_min = a * static_cast<long double>(na) / 4.0L;
    bad_cdeg = a * a * a * static_cast<long double>(nb) / 2048.0L;
    degbad_max = a * a * static_cast<long double>(na) / 64.0L;
  }
};

}  // namespace

u64 count_paths3(const BitMatrix& G, std::size_t a_prime, std::size_t b_prime) {
  u64 total = 0;
  for (std::size_t a = 0; a < G.rows(); ++a)
    if (G.test(a, b_prime)) total += G.and_popcount(a_prime, a);
  return total;
}

GraphLemmaResult graph_lemma_det(const BitMatrix& G, double alpha,
                                 WorkCounter* wc) {
  const std::size_t na = G.rows(), nb = G.cols();
  if (na == 0 || nb == 0)
    throw std::invalid_argument("graph_lemma: empty side");
  u64 edges = G.popcount();
  if (static_cast<long double>(edges) <
      static_cast<long double>(alpha) * na * nb)
    throw std::invalid_argument("graph_lemma: |G| < alpha|A||B|");

  Thresholds th(alpha, na, nb);

  std::vector<u64> deg(na);
  for (std::size_t a = 0; a < na; ++a) deg[a] = G.row_popcount(a);
  if (wc) wc->bsg_ops += na * G.words_per_row();

  std::vector<std::size_t> a0;
  for (std::size_t a = 0; a < na; ++a)
    if (static_cast<long double>(deg[a]) >=
        static_cast<long double>(alpha) * nb / 2.0L)
      a0.push_back(a);

  // cdeg over A0 x A0 as one naive matrix product.
  std::size_t n0 = a0.size();
  std::vector<u64> cdeg(n0 * n0);
  for (std::size_t i = 0; i < n0; ++i)
    for (std::size_t j = i; j < n0; ++j) {
      u64 c = G.and_popcount(a0[i], a0[j]);
      cdeg[i * n0 + j] = c;
      cdeg[j * n0 + i] = c;
    }
  if (wc) wc->bsg_ops += n0 * n0 * G.words_per_row() / 2;

  GraphLemmaResult res;
  res.alpha = alpha;
  for (std::size_t bstar = 0; bstar < nb; ++bstar) {
    ++res.bstar_tries;
    std::vector<std::size_t> astar;  // indices into a0
    for (std::size_t i = 0; i < n0; ++i)
      if (G.test(a0[i], bstar)) astar.push_back(i);
    if (wc) wc->bsg_ops += n0;
    if (static_cast<long double>(astar.size()) < th.astar_min) continue;

    u64 bad_edges = 0;
    std::vector<u64> degbad(astar.size(), 0);
    for (std::size_t i = 0; i < astar.size(); ++i)
      for (std::size_t j = 0; j < astar.size(); ++j) {
        if (i == j) continue;
        if (static_cast<long double>(cdeg[astar[i] * n0 + astar[j]]) <=
            th.bad_cdeg) {
          ++bad_edges;
          ++degbad[i];
        }
      }
    if (wc) wc->bsg_ops += astar.size() * astar.size();
    if (static_cast<long double>(bad_edges) >
        static_cast<long double>(alpha) * alpha * astar.size() * na / 256.0L)
      continue;

    std::vector<std::size_t> a_prime;
    for (std::size_t i = 0; i < astar.size(); ++i)
      if (static_cast<long double>(degbad[i]) <= th.degbad_max)
        a_prime.push_back(a0[astar[i]]);
    if (a_prime.empty()) continue;

    long double bprime_min =
        static_cast<long double>(alpha) * a_prime.size() / 4.0L;
    std::vector<std::size_t> b_prime;
    for (std::size_t b = 0; b < nb; ++b) {
      u64 d = 0;
      for (std::size_t a : a_prime) d += G.test(a, b);
      if (static_cast<long double>(d) >= bprime_min) b_prime.push_back(b);
    }
    if (wc) wc->bsg_ops += a_prime.size() * nb;
    if (b_prime.empty()) continue;

    res.a_idx = std::move(a_prime);
    res.b_idx = std::move(b_prime);
    return res;
  }
  throw std::runtime_error(
      "graph_lemma_det: no pivot satisfied the density test (precondition violated?)");
}

GraphLemmaResult graph_lemma_rand(const BitMatrix& G, double alpha, Rng& rng,
                                  const RandLemmaOptions& opt, WorkCounter* wc) {
  const std::size_t na = G.rows(), nb = G.cols();
  if (na == 0 || nb == 0)
    throw std::invalid_argument("graph_lemma: empty side");

  const double n_geo = std::sqrt(static_cast<double>(na) * static_cast<double>(nb));
  const double log_n = std::max(1.0, std::log2(std::max(2.0, n_geo)));
  const double inv_a = 1.0 / alpha;
  const double inv_d2 = 1.0 / (opt.delta * opt.delta);
  const double inv_d = 1.0 / opt.delta;

  auto want = [&](double x) -> std::size_t {
    if (x > 1e15) return static_cast<std::size_t>(-1);
    return static_cast<std::size_t>(std::ceil(x));
  };
  const std::size_t s1 = want(inv_d2 * inv_a * log_n);
  const std::size_t s5 = want(inv_d2 * inv_a * inv_a * inv_a * log_n);
  const std::size_t s6 = want(inv_d2 * inv_a * inv_a * log_n);
  const std::size_t s7 = want(inv_d2 * inv_a * inv_a * log_n);
  const std::size_t s8 = want(inv_d * inv_a * log_n);

  Thresholds th(alpha, na, nb);

  // Line 1: A0 via sampled degrees.
  std::vector<std::size_t> a0;
  {
    bool exact = nb <= opt.exact_below || s1 >= nb;
    std::vector<std::size_t> r1;
    if (!exact) r1 = sample_indices(rng, nb, s1);
    long double cutoff = static_cast<long double>(alpha) * nb / 2.0L;
    for (std::size_t a = 0; a < na; ++a) {
      long double est;
      if (exact) {
        est = static_cast<long double>(G.row_popcount(a));
        if (wc) wc->bsg_ops += G.words_per_row();
      } else {
        u64 hits = 0;
        for (std::size_t b : r1) hits += G.test(a, b);
        est = static_cast<long double>(hits) * nb / static_cast<long double>(r1.size());
        if (wc) wc->bsg_ops += r1.size();
      }
      if (est >= cutoff) a0.push_back(a);
    }
  }
  if (a0.empty())
    throw std::runtime_error("graph_lemma_rand: no high-degree vertices (graph too sparse?)");

  // R5 sample shared across pivot attempts; rows over it built lazily.
  bool cdeg_exact = nb <= opt.exact_below || s5 >= nb;
  std::vector<std::size_t> r5;
  if (!cdeg_exact) r5 = sample_indices(rng, nb, s5);
  const std::size_t r5n = cdeg_exact ? nb : r5.size();
  const std::size_t r5w = (r5n + 63) / 64;
  const long double cdeg_scale =
      cdeg_exact ? 1.0L : static_cast<long double>(nb) / static_cast<long double>(r5n);

  std::vector<std::vector<u64>> r5row(na);
  auto r5_row_of = [&](std::size_t a) -> const std::vector<u64>& {
    auto& row = r5row[a];
    if (row.empty()) {
      row.assign(r5w, 0);
      if (cdeg_exact) {
        const u64* src = G.row(a);
        for (std::size_t w = 0; w < G.words_per_row(); ++w) row[w] = src[w];
      } else {
        for (std::size_t i = 0; i < r5n; ++i)
          if (G.test(a, r5[i])) row[i / 64] |= u64(1) << (i % 64);
      }
      if (wc) wc->bsg_ops += r5n;
    }
    return row;
  };
  auto cdeg_est = [&](std::size_t a, std::size_t a2) -> long double {
    const auto& x = r5_row_of(a);
    const auto& y = r5_row_of(a2);
    u64 c = 0;
    for (std::size_t w = 0; w < r5w; ++w) c += std::popcount(x[w] & y[w]);
    if (wc) wc->bsg_ops += r5w;
    return static_cast<long double>(c) * cdeg_scale;
  };

  GraphLemmaResult res;
  res.alpha = alpha;
  const std::size_t tries =
      static_cast<std::size_t>(std::ceil(opt.try_constant * inv_a * log_n)) + 1;
  for (std::size_t t = 0; t < tries; ++t) {
    ++res.bstar_tries;
    std::size_t bstar = static_cast<std::size_t>(rand_below(rng, nb));
    std::vector<std::size_t> astar;
    for (std::size_t a : a0)
      if (G.test(a, bstar)) astar.push_back(a);
    if (wc) wc->bsg_ops += a0.size();
    if (static_cast<long double>(astar.size()) < th.astar_min) continue;

    // Line 6: |BAD*| via a pair sample.
    {
      bool exact_pairs = s6 >= astar.size() * astar.size();
      u64 bad = 0;
      std::size_t checked = 0;
      if (exact_pairs) {
        for (std::size_t i = 0; i < astar.size(); ++i)
          for (std::size_t j = 0; j < astar.size(); ++j) {
            if (i == j) continue;
            ++checked;
            if (cdeg_est(astar[i], astar[j]) <= th.bad_cdeg) ++bad;
          }
      } else {
        checked = s6;
        for (std::size_t k = 0; k < s6; ++k) {
          std::size_t i = static_cast<std::size_t>(rand_below(rng, astar.size()));
          std::size_t j = static_cast<std::size_t>(rand_below(rng, astar.size()));
          if (i == j) continue;
          if (cdeg_est(astar[i], astar[j]) <= th.bad_cdeg) ++bad;
        }
      }
      long double est = checked == 0
                            ? 0.0L
                            : static_cast<long double>(bad) *
                                  static_cast<long double>(astar.size()) *
                                  static_cast<long double>(astar.size()) /
                                  static_cast<long double>(checked);
      if (est > static_cast<long double>(alpha) * alpha * astar.size() * na / 256.0L)
        continue;
    }

    // Line 7: A' via sampled BAD-degree.
    std::vector<std::size_t> a_prime;
    {
      bool exact7 = s7 >= astar.size();
      std::vector<std::size_t> r7;
      if (!exact7) r7 = sample_indices(rng, astar.size(), s7);
      const std::size_t r7n = exact7 ? astar.size() : r7.size();
      for (std::size_t i = 0; i < astar.size(); ++i) {
        u64 hits = 0;
        for (std::size_t k = 0; k < r7n; ++k) {
          std::size_t j = exact7 ? k : r7[k];
          if (astar[j] == astar[i]) continue;
          if (cdeg_est(astar[i], astar[j]) <= th.bad_cdeg) ++hits;
        }
        long double est = static_cast<long double>(hits) *
                          static_cast<long double>(astar.size()) /
                          static_cast<long double>(r7n);
        if (est <= th.degbad_max) a_prime.push_back(astar[i]);
      }
    }
    if (a_prime.empty()) continue;

    // Line 8: B' via a sample of A'.
    std::vector<std::size_t> b_prime;
    {
      bool exact8 = s8 >= a_prime.size();
      std::vector<std::size_t> r8;
      if (!exact8) r8 = sample_indices(rng, a_prime.size(), s8);
      const std::size_t r8n = exact8 ? a_prime.size() : r8.size();
      long double cutoff = static_cast<long double>(alpha) * a_prime.size() / 4.0L;
      for (std::size_t b = 0; b < nb; ++b) {
        u64 hits = 0;
        for (std::size_t k = 0; k < r8n; ++k)
          hits += G.test(exact8 ? a_prime[k] : a_prime[r8[k]], b);
        long double est = static_cast<long double>(hits) *
                          static_cast<long double>(a_prime.size()) /
                          static_cast<long double>(r8n);
        if (est >= cutoff) b_prime.push_back(b);
      }
      if (wc) wc->bsg_ops += nb * r8n;
    }
    if (b_prime.empty()) continue;

    res.a_idx = std::move(a_prime);
    res.b_idx = std::move(b_prime);
    return res;
  }
  throw std::runtime_error("graph_lemma_rand: pivot attempt cap exceeded");
}

}  // namespace sumkit
