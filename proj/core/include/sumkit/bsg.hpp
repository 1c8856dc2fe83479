#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sumkit/bitmatrix.hpp"
#include "sumkit/graph_lemma.hpp"
#include "sumkit/types.hpp"
#include "sumkit/util.hpp"

namespace sumkit {

enum class BsgVariant { det, rand };

struct Biclique {
  std::vector<i64> a_vals;
  std::vector<i64> b_vals;
  std::vector<i64> sumset;  // exact a_vals + b_vals, sorted
  double alpha_i = 0.0;     // edge density when this biclique was extracted
};

/// Biclique cover of {(a,b) : a+b in S} plus an explicit remainder pair list.
struct BsgCover {
  std::vector<Biclique> bicliques;
  std::vector<std::pair<i64, i64>> remainder;
  double alpha = 0.0;
  double n_hat = 0.0;  // sqrt(|A||B|)
  double t_hat = 0.0;  // |S| / n_hat
  u64 g1_size = 0;     // |{(a,b) : a+b in S}|
  BsgVariant variant = BsgVariant::rand;
  int lemma_retries = 0;
  bool singleton_mode = false;  // k bound exceeded |A||B|; per-edge bicliques
};

/// One application of the subset-extraction step to an explicit graph.
struct ExtractResult {
  std::vector<i64> a_vals;
  std::vector<i64> b_vals;
  double certified_bound = 0.0;  // 131072 t^3 N / alpha^5
  u64 actual_sumset_size = 0;
  GraphLemmaResult lemma;
};

ExtractResult bsg_extract(const std::vector<i64>& A, const std::vector<i64>& B,
                          const BitMatrix& G, double alpha, double t,
                          BsgVariant variant, Rng& rng,
                          WorkCounter* wc = nullptr);

/// Iterated cover: repeatedly extracts dense bicliques until the residual
/// graph has at most alpha*N^2 edges, which become the remainder.
/// The randomized variant re-runs with fresh randomness if the final audit
/// fails (Las Vegas); pass verify_retry=false to skip the audit.
BsgCover bsg_cover(const std::vector<i64>& A, const std::vector<i64>& B,
                   const std::vector<i64>& S, double alpha, BsgVariant variant,
                   Rng& rng, WorkCounter* wc = nullptr,
                   bool verify_retry = true);

struct CoverAudit {
  bool pass = false;
  bool coverage_ok = false;         // every solution pair in R or a biclique
  bool remainder_subset_ok = false; // R contains only solution pairs
  bool remainder_bound_ok = false;  // |R| <= alpha N^2
  bool k_bound_ok = false;          // k <= 64/alpha + 1
  bool sumsets_ok = false;          // every T_i equals the true sumset
  bool biclique_bound_ok = false;   // |T_i| <= 131072 t^3 N / alpha_i^5
  std::string detail;
};

CoverAudit verify_cover(const BsgCover& cover, const std::vector<i64>& A,
                        const std::vector<i64>& B, const std::vector<i64>& S);

}  // namespace sumkit
