#include "sumkit/hash_family.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace sumkit {

namespace {

double log2_at_least_one(double x) { return std::max(1.0, std::log2(x)); }

std::vector<i64> sieve(i64 bound) {
  std::vector<bool> comp(static_cast<std::size_t>(std::max<i64>(bound, 4)), false);
  std::vector<i64> primes;
  for (i64 p = 2; p < bound; ++p) {
    if (comp[static_cast<std::size_t>(p)]) continue;
    primes.push_back(p);
    for (i64 q = p * p; q < bound; q += p) comp[static_cast<std::size_t>(q)] = true;
  }
  return primes;
}

// Collision counts of T under fn, bucketed by hash value.
// counts[i] = |{y in T, y != elements[i], fn(y) = fn(elements[i])}|.
std::vector<i64> collision_counts(const PseudoAdditiveFn& fn,
                                  const std::vector<i64>& elements,
                                  WorkCounter* wc) {
  FlatMap<i64> buckets;
  for (i64 x : elements) buckets[fn.eval(x)]++;
  std::vector<i64> counts(elements.size());
  for (std::size_t i = 0; i < elements.size(); ++i)
    counts[i] = *buckets.find(fn.eval(elements[i])) - 1;
  if (wc) wc->fft_cells += 2 * elements.size();
  return counts;
}

PseudoAdditiveFn identity_fn(i64 universe) {
  PseudoAdditiveFn fn;
  fn.identity = true;
  fn.range = universe;
  return fn;
}

PseudoAdditiveFn single_prime_fn(i64 p) {
  PseudoAdditiveFn fn;
  fn.primes = {p};
  fn.weights = {1};
  fn.range = 2 * p - 1;
  return fn;
}

}  // namespace

const std::vector<i64>& prime_pool(i64 bound) {
  static std::mutex mu;
  static std::vector<i64> primes;
  static i64 sieved_to = 0;
  std::lock_guard<std::mutex> lock(mu);
  if (bound > sieved_to) {
    i64 target = std::max<i64>(bound, 2 * sieved_to);
    primes = sieve(target);
    sieved_to = target;
  }
  static thread_local std::vector<i64> view;
  view.clear();
  auto it = std::upper_bound(primes.begin(), primes.end(), bound - 1);
  view.assign(primes.begin(), it);
  return view;
}

i64 family_pool_bound(i64 n_elems, i64 universe, double constant) {
  double lg = log2_at_least_one(static_cast<double>(universe));
  double b = constant * static_cast<double>(std::max<i64>(n_elems, 1)) * lg * lg;
  return static_cast<i64>(std::min(b, 1.0e18)) + 3;
}

HashFamily build_family_randomized(const std::vector<i64>& T, i64 universe,
                                   Rng& rng, const FamilyOptions& opt,
                                   WorkCounter* wc) {
  if (T.empty()) throw std::invalid_argument("build_family: T is empty");
  HashFamily fam;
  fam.elements = T;
  std::sort(fam.elements.begin(), fam.elements.end());
  fam.elements.erase(std::unique(fam.elements.begin(), fam.elements.end()),
                     fam.elements.end());
  fam.universe = universe;

  i64 n = static_cast<i64>(fam.elements.size());
  i64 bound = family_pool_bound(n, universe, opt.constant);
  if (universe <= bound) {
    // The hashed range would not beat the universe itself; the identity is
    // pseudo-additive and trivially collision-free.
    fam.fns = {identity_fn(universe)};
    fam.witness.assign(fam.elements.size(), 0);
    return fam;
  }

  const auto& pool = prime_pool(bound);
  // Collision-freedom needs p > n at the very least; restrict draws to the
  // usable tail of the pool.
  std::size_t lo = static_cast<std::size_t>(
      std::lower_bound(pool.begin(), pool.end(), n + 1) - pool.begin());
  if (lo >= pool.size())
    throw std::runtime_error("build_family_randomized: prime pool too small");

  int k = static_cast<int>(std::floor(std::log2(static_cast<double>(std::max<i64>(n, 2))))) + 1;
  for (int attempt = 0; attempt < opt.retry_cap; ++attempt) {
    std::vector<i64> draws;
    draws.reserve(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
      std::size_t pick = lo + static_cast<std::size_t>(
                                  rand_below(rng, static_cast<u64>(pool.size() - lo)));
      draws.push_back(pool[pick]);
    }
    // Witnesses prefer the smallest primes: the downstream convolutions run
    // one transform per witnessing function, sized by its range.
    std::sort(draws.begin(), draws.end());
    draws.erase(std::unique(draws.begin(), draws.end()), draws.end());
    fam.fns.clear();
    fam.witness.assign(fam.elements.size(), -1);
    std::size_t unwitnessed = fam.elements.size();
    for (i64 p : draws) {
      if (unwitnessed == 0) break;
      PseudoAdditiveFn fn = single_prime_fn(p);
      auto counts = collision_counts(fn, fam.elements, wc);
      bool used = false;
      for (std::size_t i = 0; i < counts.size(); ++i) {
        if (fam.witness[i] < 0 && counts[i] == 0) {
          fam.witness[i] = static_cast<int>(fam.fns.size());
          --unwitnessed;
          used = true;
        }
      }
      if (used) fam.fns.push_back(std::move(fn));
    }
    if (unwitnessed == 0) {
      fam.build_retries = attempt;
      return fam;
    }
  }
  throw std::runtime_error(
      "build_family_randomized: retry cap exceeded; failure probability anomaly");
}

HashFamily build_family_deterministic(const std::vector<i64>& T, i64 universe,
                                      const FamilyOptions& opt, WorkCounter* wc) {
  if (T.empty()) throw std::invalid_argument("build_family: T is empty");
  if (opt.levels < 1) throw std::invalid_argument("build_family: levels must be >= 1");
  HashFamily fam;
  fam.elements = T;
  std::sort(fam.elements.begin(), fam.elements.end());
  fam.elements.erase(std::unique(fam.elements.begin(), fam.elements.end()),
                     fam.elements.end());
  fam.universe = universe;

  i64 n = static_cast<i64>(fam.elements.size());
  int ell = opt.levels;
  double n_d = static_cast<double>(n);
  double lg = log2_at_least_one(static_cast<double>(universe));
  i64 level_bound = static_cast<i64>(std::min(
                        opt.constant * std::pow(n_d, 1.0 / ell) * lg * lg, 1.0e18)) + 3;
  if (universe <= level_bound && ell == 1) {
    fam.fns = {identity_fn(universe)};
    fam.witness.assign(fam.elements.size(), 0);
    return fam;
  }
  const auto& pool = prime_pool(level_bound);

  std::vector<std::size_t> alive(fam.elements.size());
  for (std::size_t i = 0; i < alive.size(); ++i) alive[i] = i;
  fam.witness.assign(fam.elements.size(), -1);

  i64 k_cap = (i64(1) << ell) * static_cast<i64>(log2_at_least_one(n_d)) + 1;
  while (!alive.empty()) {
    if (static_cast<i64>(fam.fns.size()) > 4 * k_cap)
      throw std::runtime_error("build_family_deterministic: pool too small (family grew past cap); increase the constant");

    // Partition-refinement ids: group[i] identifies the tuple
    // (x mod p_1, ..., x mod p_i) for elements[i].
    std::vector<i64> group(fam.elements.size(), 0);
    std::vector<i64> chosen;
    for (int level = 1; level <= ell; ++level) {
      double thresh = std::pow(n_d, 1.0 - static_cast<double>(level) / ell);
      // An integer count whose mean is >= |S|/2^level has a realization
      // >= ceil of it, so demanding the ceiling keeps every round productive.
      i64 need = static_cast<i64>((alive.size() + (std::size_t(1) << level) - 1) >>
                                  level);
      bool found = false;
      // Geometric sweep from the small end of the pool (plus the top as a
      // last resort): the first passing prime keeps hash ranges short, and
      // the expectation argument guarantees a dense supply of passing primes.
      std::size_t lo_idx = static_cast<std::size_t>(
          std::lower_bound(pool.begin(), pool.end(),
                           static_cast<i64>(std::pow(n_d, 1.0 / ell))) -
          pool.begin());
      std::vector<std::size_t> order;
      for (std::size_t off = 0; lo_idx + off < pool.size(); off = 2 * off + 2) {
        // Each anchor and its successor, so one unlucky prime cannot block.
        order.push_back(lo_idx + off);
        if (lo_idx + off + 1 < pool.size()) order.push_back(lo_idx + off + 1);
      }
      if (!pool.empty() && (order.empty() || order.back() != pool.size() - 1))
        order.push_back(pool.size() - 1);
      // Last resort: the existence argument quantifies over the whole pool,
      // so scan it all (descending) before giving up.
      for (std::size_t j = pool.size(); j-- > 0;) order.push_back(j);
      for (std::size_t idx : order) {
        i64 p = pool[idx];
        bool dup = false;
        for (i64 q : chosen)
          if (q == p) dup = true;
        if (dup) continue;
        // Refine groups by x mod p and count per-element collisions.
        FlatMap<i64> remap;
        std::vector<i64> next(fam.elements.size());
        i64 next_id = 0;
        FlatMap<i64> bucket_count;
        for (std::size_t i = 0; i < fam.elements.size(); ++i) {
          i64 key = group[i] * (p + 1) + fam.elements[i] % p;
          i64& id = remap[key];
          if (id == 0) id = ++next_id;
          next[i] = id;
          bucket_count[id]++;
        }
        if (wc) wc->fft_cells += fam.elements.size();
        i64 good = 0;
        for (std::size_t i : alive) {
          i64 coll = *bucket_count.find(next[i]) - 1;
          if (static_cast<double>(coll) < thresh) ++good;
        }
        if (good >= need) {
          chosen.push_back(p);
          group = std::move(next);
          found = true;
          break;
        }
      }
      if (!found)
        throw std::runtime_error(
            "build_family_deterministic: pool too small at level " +
            std::to_string(level) + "; increase the constant");
    }

    PseudoAdditiveFn fn;
    fn.primes = chosen;
    fn.weights.resize(chosen.size());
    i64 w = 1;
    for (std::size_t i = 0; i < chosen.size(); ++i) {
      fn.weights[i] = w;
      w *= 2 * chosen[i] - 1;
    }
    fn.range = w;

    auto counts = collision_counts(fn, fam.elements, wc);
    std::vector<std::size_t> still;
    bool removed = false;
    int fn_idx = static_cast<int>(fam.fns.size());
    for (std::size_t i : alive) {
      if (counts[i] == 0) {
        fam.witness[i] = fn_idx;
        removed = true;
      } else {
        still.push_back(i);
      }
    }
    if (!removed)
      throw std::runtime_error(
          "build_family_deterministic: round removed nothing; pool too small");
    fam.fns.push_back(std::move(fn));
    alive = std::move(still);
  }
  return fam;
}

bool audit_pseudo_perfect(const HashFamily& fam) {
  if (fam.witness.size() != fam.elements.size()) return false;
  std::vector<std::vector<i64>> per_fn(fam.fns.size());
  for (std::size_t j = 0; j < fam.fns.size(); ++j)
    per_fn[j] = collision_counts(fam.fns[j], fam.elements, nullptr);
  for (std::size_t i = 0; i < fam.elements.size(); ++i) {
    int w = fam.witness[i];
    if (w < 0 || w >= static_cast<int>(fam.fns.size())) return false;
    if (per_fn[static_cast<std::size_t>(w)][i] != 0) return false;
  }
  return true;
}

}  // namespace sumkit
