#include "sumkit/bsg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sumkit {

namespace {

std::vector<i64> sorted_unique(std::vector<i64> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<i64> naive_sumset(const std::vector<i64>& a,
                              const std::vector<i64>& b, WorkCounter* wc) {
  std::vector<i64> out;
  out.reserve(a.size() * b.size());
  for (i64 x : a)
    for (i64 y : b) out.push_back(x + y);
  if (wc) wc->bsg_ops += a.size() * b.size();
  return sorted_unique(std::move(out));
}

// Builds the bipartite solution graph, probing whichever of the three
// orientations touches the fewest pairs.
BitMatrix build_solution_graph(const std::vector<i64>& A,
                               const std::vector<i64>& B,
                               const std::vector<i64>& S, WorkCounter* wc,
                               u64* edges_out) {
  BitMatrix G(A.size(), B.size());
  u64 edges = 0;
  u64 ab = static_cast<u64>(A.size()) * B.size();
  u64 as = static_cast<u64>(A.size()) * S.size();
  u64 bs = static_cast<u64>(B.size()) * S.size();
  if (ab <= as || ab <= bs) {
    FlatSet s_set(S);
    for (std::size_t i = 0; i < A.size(); ++i)
      for (std::size_t j = 0; j < B.size(); ++j)
        if (s_set.contains(A[i] + B[j])) {
          G.set(i, j);
          ++edges;
        }
    if (wc) wc->bsg_ops += ab;
  } else {
    FlatMap<i64> index_of;
    bool a_side = as <= bs;
    const auto& keyed = a_side ? B : A;
    const auto& outer = a_side ? A : B;
    for (std::size_t j = 0; j < keyed.size(); ++j)
      index_of[keyed[j]] = static_cast<i64>(j) + 1;
    for (std::size_t i = 0; i < outer.size(); ++i)
      for (i64 s : S) {
        i64 other = s - outer[i];
        const i64* slot = index_of.find(other);
        if (slot && *slot > 0) {
          std::size_t j = static_cast<std::size_t>(*slot - 1);
          if (a_side) {
            if (!G.test(i, j)) { G.set(i, j); ++edges; }
          } else {
            if (!G.test(j, i)) { G.set(j, i); ++edges; }
          }
        }
      }
    if (wc) wc->bsg_ops += (a_side ? as : bs);
  }
  *edges_out = edges;
  return G;
}

BsgCover build_cover_once(const std::vector<i64>& A, const std::vector<i64>& B,
                          const std::vector<i64>& S, double alpha,
                          BsgVariant variant, Rng& rng, WorkCounter* wc) {
  BsgCover cover;
  cover.alpha = alpha;
  cover.variant = variant;
  cover.n_hat = std::sqrt(static_cast<double>(A.size()) * static_cast<double>(B.size()));
  cover.t_hat = cover.n_hat > 0 ? static_cast<double>(S.size()) / cover.n_hat : 0.0;
  if (A.empty() || B.empty() || S.empty()) return cover;

  u64 edges = 0;
  BitMatrix G = build_solution_graph(A, B, S, wc, &edges);
  cover.g1_size = edges;

  const long double n2 = static_cast<long double>(A.size()) *
                         static_cast<long double>(B.size());
  const long double gate = static_cast<long double>(alpha) * n2;

  if (static_cast<long double>(edges) <= gate) {
    // Trivial k = 0 cover; the whole graph is the remainder.
    for (std::size_t i = 0; i < A.size(); ++i)
      for (std::size_t j = 0; j < B.size(); ++j)
        if (G.test(i, j)) cover.remainder.emplace_back(A[i], B[j]);
    if (wc) wc->bsg_ops += G.rows() * G.words_per_row();
    return cover;
  }

  if (64.0 / alpha + 1.0 > static_cast<double>(n2)) {
    // The k bound dwarfs the graph itself: per-edge singleton bicliques.
    cover.singleton_mode = true;
    for (std::size_t i = 0; i < A.size(); ++i)
      for (std::size_t j = 0; j < B.size(); ++j)
        if (G.test(i, j)) {
          Biclique bc;
          bc.a_vals = {A[i]};
          bc.b_vals = {B[j]};
          bc.sumset = {A[i] + B[j]};
          bc.alpha_i = static_cast<double>(edges) / static_cast<double>(n2);
          cover.bicliques.push_back(std::move(bc));
        }
    return cover;
  }

  const u64 hard_cap = static_cast<u64>(A.size()) * B.size() + 2;
  u64 iter = 0;
  while (static_cast<long double>(edges) > gate) {
    if (++iter > hard_cap)
      throw std::runtime_error("bsg_cover: iteration cap exceeded");
    // Round alpha_i down a hair so the lemma precondition is safe under
    // floating-point rounding.
    double alpha_i = static_cast<double>(
        (static_cast<long double>(edges) / n2) * (1.0L - 1e-9L));

    std::vector<std::size_t> a_idx, b_idx;
    bool have = false;
    for (int attempt = 0; attempt < 4 && !have; ++attempt) {
      try {
        GraphLemmaResult lem =
            variant == BsgVariant::det
                ? graph_lemma_det(G, alpha_i, wc)
                : graph_lemma_rand(G, alpha_i, rng, {}, wc);
        a_idx = std::move(lem.a_idx);
        b_idx = std::move(lem.b_idx);
        have = true;
      } catch (const std::runtime_error&) {
        if (variant == BsgVariant::det) throw;
        ++cover.lemma_retries;
      }
    }
    u64 removed = 0;
    if (have) {
      for (std::size_t i : a_idx)
        for (std::size_t j : b_idx)
          if (G.test(i, j)) {
            G.clear(i, j);
            ++removed;
          }
      if (wc) wc->bsg_ops += a_idx.size() * b_idx.size();
    }
    if (removed == 0) {
      if (variant == BsgVariant::det)
        throw std::runtime_error("bsg_cover: deterministic step removed no edges");
      // Densest remaining row always makes progress.
      std::size_t best = 0;
      u64 best_deg = 0;
      for (std::size_t i = 0; i < G.rows(); ++i) {
        u64 d = G.row_popcount(i);
        if (d > best_deg) { best_deg = d; best = i; }
      }
      if (wc) wc->bsg_ops += G.rows() * G.words_per_row();
      a_idx = {best};
      b_idx.clear();
      for (std::size_t j = 0; j < G.cols(); ++j)
        if (G.test(best, j)) {
          b_idx.push_back(j);
          G.clear(best, j);
          ++removed;
        }
      ++cover.lemma_retries;
    }

    Biclique bc;
    bc.alpha_i = alpha_i;
    bc.a_vals.reserve(a_idx.size());
    for (std::size_t i : a_idx) bc.a_vals.push_back(A[i]);
    bc.b_vals.reserve(b_idx.size());
    for (std::size_t j : b_idx) bc.b_vals.push_back(B[j]);
    std::sort(bc.a_vals.begin(), bc.a_vals.end());
    std::sort(bc.b_vals.begin(), bc.b_vals.end());
    bc.sumset = naive_sumset(bc.a_vals, bc.b_vals, wc);
    cover.bicliques.push_back(std::move(bc));
    edges -= removed;
  }

  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t j = 0; j < B.size(); ++j)
      if (G.test(i, j)) cover.remainder.emplace_back(A[i], B[j]);
  if (wc) wc->bsg_ops += G.rows() * G.words_per_row();
  return cover;
}

}  // namespace

ExtractResult bsg_extract(const std::vector<i64>& A, const std::vector<i64>& B,
                          const BitMatrix& G, double alpha, double t,
                          BsgVariant variant, Rng& rng, WorkCounter* wc) {
  if (G.rows() != A.size() || G.cols() != B.size())
    throw std::invalid_argument("bsg_extract: graph shape mismatch");
  double n_hat = std::sqrt(static_cast<double>(A.size()) * static_cast<double>(B.size()));
  // Check the sum-count promise |{a+b : (a,b) in G}| <= t N.
  std::vector<i64> sums;
  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t j = 0; j < B.size(); ++j)
      if (G.test(i, j)) sums.push_back(A[i] + B[j]);
  sums = sorted_unique(std::move(sums));
  if (static_cast<double>(sums.size()) > t * n_hat + 0.5)
    throw std::invalid_argument("bsg_extract: edge sums exceed t*N");

  ExtractResult res;
  res.lemma = variant == BsgVariant::det ? graph_lemma_det(G, alpha, wc)
                                         : graph_lemma_rand(G, alpha, rng, {}, wc);
  for (std::size_t i : res.lemma.a_idx) res.a_vals.push_back(A[i]);
  for (std::size_t j : res.lemma.b_idx) res.b_vals.push_back(B[j]);
  std::sort(res.a_vals.begin(), res.a_vals.end());
  std::sort(res.b_vals.begin(), res.b_vals.end());
  res.actual_sumset_size = naive_sumset(res.a_vals, res.b_vals, wc).size();
  double a5 = std::pow(alpha, 5.0);
  res.certified_bound = 131072.0 * t * t * t * n_hat / a5;
  return res;
}

BsgCover bsg_cover(const std::vector<i64>& A_in, const std::vector<i64>& B_in,
                   const std::vector<i64>& S_in, double alpha,
                   BsgVariant variant, Rng& rng, WorkCounter* wc,
                   bool verify_retry) {
  if (!(alpha > 0.0))
    throw std::invalid_argument("bsg_cover: alpha must be positive");
  alpha = std::min(alpha, 1.0);
  auto A = sorted_unique(A_in);
  auto B = sorted_unique(B_in);
  auto S = sorted_unique(S_in);

  int attempts = variant == BsgVariant::rand && verify_retry ? 3 : 1;
  for (int k = 0; k < attempts; ++k) {
    BsgCover cover = build_cover_once(A, B, S, alpha, variant, rng, wc);
    if (variant == BsgVariant::det || !verify_retry) return cover;
    CoverAudit audit = verify_cover(cover, A, B, S);
    if (audit.pass) return cover;
    if (k + 1 == attempts)
      throw std::runtime_error("bsg_cover: audit kept failing: " + audit.detail);
  }
  throw std::logic_error("bsg_cover: unreachable");
}

CoverAudit verify_cover(const BsgCover& cover, const std::vector<i64>& A_in,
                        const std::vector<i64>& B_in,
                        const std::vector<i64>& S_in) {
  CoverAudit out;
  auto A = sorted_unique(A_in);
  auto B = sorted_unique(B_in);
  auto S = sorted_unique(S_in);
  FlatSet s_set(S);

  FlatMap<i64> a_index, b_index;
  for (std::size_t i = 0; i < A.size(); ++i) a_index[A[i]] = static_cast<i64>(i) + 1;
  for (std::size_t j = 0; j < B.size(); ++j) b_index[B[j]] = static_cast<i64>(j) + 1;

  std::size_t k = cover.bicliques.size();
  std::size_t kw = (k + 63) / 64 + 1;
  std::vector<u64> a_mask(A.size() * kw, 0), b_mask(B.size() * kw, 0);
  auto mark = [&](std::vector<u64>& mask, FlatMap<i64>& index, i64 val,
                  std::size_t bit) -> bool {
    const i64* slot = index.find(val);
    if (!slot || *slot == 0) return false;
    std::size_t row = static_cast<std::size_t>(*slot - 1);
    mask[row * kw + bit / 64] |= u64(1) << (bit % 64);
    return true;
  };

  out.pass = true;
  auto fail = [&](bool& flag, const std::string& msg) {
    flag = false;
    out.pass = false;
    if (out.detail.empty()) out.detail = msg;
  };
  out.coverage_ok = out.remainder_subset_ok = out.remainder_bound_ok = true;
  out.k_bound_ok = out.sumsets_ok = out.biclique_bound_ok = true;

  for (std::size_t i = 0; i < k; ++i) {
    const Biclique& bc = cover.bicliques[i];
    for (i64 a : bc.a_vals)
      if (!mark(a_mask, a_index, a, i))
        fail(out.sumsets_ok, "biclique " + std::to_string(i) + " has a value outside A");
    for (i64 b : bc.b_vals)
      if (!mark(b_mask, b_index, b, i))
        fail(out.sumsets_ok, "biclique " + std::to_string(i) + " has a value outside B");
    // Exact sumset check.
    std::vector<i64> expect;
    expect.reserve(bc.a_vals.size() * bc.b_vals.size());
    for (i64 a : bc.a_vals)
      for (i64 b : bc.b_vals) expect.push_back(a + b);
    std::sort(expect.begin(), expect.end());
    expect.erase(std::unique(expect.begin(), expect.end()), expect.end());
    if (expect != bc.sumset)
      fail(out.sumsets_ok, "biclique " + std::to_string(i) + " stores a wrong sumset");
  }

  FlatSet r_pairs;
  for (auto& [a, b] : cover.remainder) {
    const i64* ia = a_index.find(a);
    const i64* ib = b_index.find(b);
    if (!ia || !ib) {
      fail(out.remainder_subset_ok, "remainder pair outside A x B");
      continue;
    }
    if (!s_set.contains(a + b))
      fail(out.remainder_subset_ok,
           "remainder pair (" + std::to_string(a) + "," + std::to_string(b) +
               ") is not a solution pair");
    r_pairs.insert((*ia - 1) * static_cast<i64>(B.size()) + (*ib - 1));
  }

  // Coverage: every solution pair lies in R or in some biclique.
  for (std::size_t i = 0; i < A.size() && out.coverage_ok; ++i) {
    for (std::size_t j = 0; j < B.size(); ++j) {
      if (!s_set.contains(A[i] + B[j])) continue;
      if (r_pairs.contains(static_cast<i64>(i) * static_cast<i64>(B.size()) +
                           static_cast<i64>(j)))
        continue;
      bool covered = false;
      const u64* ma = &a_mask[i * kw];
      const u64* mb = &b_mask[j * kw];
      for (std::size_t w = 0; w < kw; ++w)
        if (ma[w] & mb[w]) { covered = true; break; }
      if (!covered) {
        fail(out.coverage_ok,
             "uncovered solution pair (" + std::to_string(A[i]) + "," +
                 std::to_string(B[j]) + ")");
        break;
      }
    }
  }

  long double n2 = static_cast<long double>(A.size()) * B.size();
  if (static_cast<long double>(cover.remainder.size()) >
      static_cast<long double>(cover.alpha) * n2 + 0.5L)
    fail(out.remainder_bound_ok, "|R| exceeds alpha N^2");

  double k_bound = 64.0 / cover.alpha + 1.0;
  if (!cover.singleton_mode && static_cast<double>(k) > k_bound)
    fail(out.k_bound_ok, "k exceeds 64/alpha + 1");

  double n_hat = std::sqrt(static_cast<double>(A.size()) * static_cast<double>(B.size()));
  double t_hat = n_hat > 0 ? static_cast<double>(S.size()) / n_hat : 0.0;
  double slack = cover.variant == BsgVariant::rand ? 2.0 : 1.0;
  for (const Biclique& bc : cover.bicliques) {
    double bound = 131072.0 * t_hat * t_hat * t_hat * n_hat /
                   std::pow(bc.alpha_i, 5.0);
    if (static_cast<double>(bc.sumset.size()) > slack * bound + 0.5)
      fail(out.biclique_bound_ok, "biclique sumset exceeds its certified bound");
  }

  return out;
}

}  // namespace sumkit
