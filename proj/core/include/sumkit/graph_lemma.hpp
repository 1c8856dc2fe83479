#pragma once

#include <vector>

#include "sumkit/bitmatrix.hpp"
#include "sumkit/types.hpp"
#include "sumkit/util.hpp"

namespace sumkit {

/// Subsets A' and B' (as index lists into the graph's sides) such that every
/// cross pair is connected by many length-3 paths, forcing |A'+B'| small.
struct GraphLemmaResult {
  std::vector<std::size_t> a_idx;
  std::vector<std::size_t> b_idx;
  double alpha = 0.0;
  int bstar_tries = 0;
};

/// Deterministic variant: exact degrees and co-degrees (naive matrix
/// products), scanning candidate pivots in index order.  Guarantees, with
/// |A*| the pivot neighborhood:
///   |A'| >= alpha|A|/8,
///   |G cap (A' x B')| >= alpha|A'||B|/4,
///   every (a',b') has >= (alpha^2|A|/64)(alpha^3|B|/2048) length-3 paths.
/// Requires |G| >= alpha|A||B|.
GraphLemmaResult graph_lemma_det(const BitMatrix& G, double alpha,
                                 WorkCounter* wc = nullptr);

struct RandLemmaOptions {
  double delta = 0.5;       // sampling accuracy knob
  std::size_t exact_below = 256;  // compute exactly when populations are small
  double try_constant = 32.0;     // pivot attempts: c/alpha * log N
};

/// Monte Carlo variant with sampled degree estimates; postconditions hold
/// with constants relaxed by (1 +- O(delta)).  Callers needing certainty
/// verify downstream.
GraphLemmaResult graph_lemma_rand(const BitMatrix& G, double alpha, Rng& rng,
                                  const RandLemmaOptions& opt = {},
                                  WorkCounter* wc = nullptr);

/// Exhaustive count of length-3 walks a'-b-a-b' in G (test oracle).
u64 count_paths3(const BitMatrix& G, std::size_t a_prime, std::size_t b_prime);

}  // namespace sumkit
