#pragma once

#include <vector>

#include "sumkit/types.hpp"
#include "sumkit/util.hpp"

namespace sumkit {

/// h(x) = (x mod p_1, ..., x mod p_l) packed into one dimension with
/// mixed radix 2*p_i - 1, so digit sums never carry.  The associated
/// hat function reduces each digit mod p_i again, giving
/// hat(h(a) + h(b)) = h(a+b) for all a, b.
struct PseudoAdditiveFn {
  std::vector<i64> primes;
  std::vector<i64> weights;  // mixed-radix multipliers, weights[0] = 1
  i64 range = 0;             // product of (2*p_i - 1); h maps into [range)
  bool identity = false;     // degenerate h(x) = x when the universe is tiny

  i64 eval(i64 x) const {
    if (identity) return x;
    i64 code = 0;
    for (std::size_t i = 0; i < primes.size(); ++i)
      code += (x % primes[i]) * weights[i];
    return code;
  }

  /// hat: defined on [2*range), lands back in [range).
  i64 hat(i64 z) const {
    if (identity) return z;
    i64 code = 0;
    for (std::size_t i = 0; i < primes.size(); ++i) {
      i64 base = 2 * primes[i] - 1;
      i64 digit = z % base;
      z /= base;
      code += (digit % primes[i]) * weights[i];
    }
    return code;
  }
};

struct HashFamily {
  std::vector<PseudoAdditiveFn> fns;
  std::vector<i64> elements;  // sorted T
  std::vector<int> witness;   // witness[i]: fn with zero collisions at elements[i]
  i64 universe = 0;
  int build_retries = 0;

  bool is_identity() const {
    return fns.size() == 1 && fns[0].identity;
  }
};

struct FamilyOptions {
  double constant = 4.0;  // the c in prime ranges [c N log^2 U]
  int levels = 2;         // deterministic construction depth
  int retry_cap = 64;
};

/// Pool bound c * N * log2(U)^2 used by the randomized construction
/// (and per-level analog for the deterministic one).
i64 family_pool_bound(i64 n_elems, i64 universe, double constant);

/// Las Vegas: draws log N + 1 single-prime functions and retries until the
/// pseudo-perfect audit passes.
HashFamily build_family_randomized(const std::vector<i64>& T, i64 universe,
                                   Rng& rng, const FamilyOptions& opt = {},
                                   WorkCounter* wc = nullptr);

/// Deterministic multi-round construction: picks levels primes per round from
/// a sieved pool, each satisfying the collision-thinning predicate, until
/// every element of T has a collision-free function.
HashFamily build_family_deterministic(const std::vector<i64>& T, i64 universe,
                                      const FamilyOptions& opt = {},
                                      WorkCounter* wc = nullptr);

/// Full bucket audit: every x in T collision-free under its witness fn.
bool audit_pseudo_perfect(const HashFamily& fam);

/// Primes in [2, bound), sieved once and cached.
const std::vector<i64>& prime_pool(i64 bound);

}  // namespace sumkit
