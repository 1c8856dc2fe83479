#include "sumkit/sumset.hpp"

#include <algorithm>
#include <stdexcept>

#include "sumkit/ntt.hpp"

namespace sumkit {

namespace {

void check_superset_small(const std::vector<i64>& A, const std::vector<i64>& B,
                          const std::vector<i64>& T) {
  if (static_cast<u64>(A.size()) * B.size() > (u64(1) << 20)) return;
  FlatSet t_set(T);
  for (i64 a : A)
    for (i64 b : B)
      if (!t_set.contains(a + b))
        throw std::invalid_argument("sumset_via_fft: element " +
                                    std::to_string(a + b) +
                                    " of A+B missing from superset T");
}

HashFamily build_family(const std::vector<i64>& T, i64 universe,
                        const SumsetOptions& opt, Rng* rng, WorkCounter* wc) {
  if (opt.mode == SumsetMode::randomized) {
    if (!rng)
      throw std::invalid_argument("sumset_via_fft: randomized mode needs an rng");
    return build_family_randomized(T, universe, *rng, opt.family, wc);
  }
  // The flattened range of a multi-prime function is the product of its
  // per-level ranges, which dwarfs the dense cap long before the build cost
  // does; single-level functions keep the convolutions short.
  FamilyOptions fo = opt.family;
  fo.levels = 1;
  return build_family_deterministic(T, universe, fo, wc);
}

// Accumulate counts of h over a value list, sized by the largest hash value
// so the convolution is no longer than it has to be.
std::vector<i64> hashed_counts(const PseudoAdditiveFn& fn,
                               const std::vector<i64>& vals) {
  i64 top = 0;
  for (i64 v : vals) top = std::max(top, fn.eval(v));
  std::vector<i64> dense(static_cast<std::size_t>(top) + 1, 0);
  for (i64 v : vals) dense[static_cast<std::size_t>(fn.eval(v))] += 1;
  return dense;
}

}  // namespace

PointSet sumset_small_universe(const PointSet& A, const PointSet& B,
                               WorkCounter* wc) {
  if (A.dim() != 1 || B.dim() != 1)
    throw std::invalid_argument("sumset_small_universe: 1D sets required");
  i64 out_universe = A.universe() + B.universe();
  if (A.empty() || B.empty())
    return PointSet::from_values(out_universe, {});
  const auto& av = A.values();
  const auto& bv = B.values();
  i64 len_a = av.back() + 1, len_b = bv.back() + 1;
  if (len_a + len_b - 1 > kDenseCap)
    throw std::invalid_argument("sumset_small_universe: universe exceeds dense cap");
  std::vector<i64> ia(static_cast<std::size_t>(len_a), 0);
  std::vector<i64> ib(static_cast<std::size_t>(len_b), 0);
  for (i64 a : av) ia[static_cast<std::size_t>(a)] = 1;
  for (i64 b : bv) ib[static_cast<std::size_t>(b)] = 1;
  auto z = convolve(ia, ib, wc);
  std::vector<i64> out;
  for (std::size_t k = 0; k < z.size(); ++k)
    if (z[k] > 0) out.push_back(static_cast<i64>(k));
  return PointSet::from_values(out_universe, std::move(out));
}

PointSet sumset_via_fft(const PointSet& A, const PointSet& B,
                        const HashFamily& fam, bool debug_check,
                        WorkCounter* wc) {
  if (A.dim() != 1 || B.dim() != 1)
    throw std::invalid_argument("sumset_via_fft: 1D sets required");
  i64 out_universe = std::max(A.universe() + B.universe(), fam.universe);
  if (A.empty() || B.empty()) return PointSet::from_values(out_universe, {});
  const auto& av = A.values();
  const auto& bv = B.values();
  if (debug_check) check_superset_small(av, bv, fam.elements);

  std::vector<char> fn_used(fam.fns.size(), 0);
  for (int w : fam.witness) fn_used[static_cast<std::size_t>(w)] = 1;

  std::vector<i64> result;
  std::vector<std::vector<char>> present(fam.fns.size());
  for (std::size_t j = 0; j < fam.fns.size(); ++j) {
    if (!fn_used[j]) continue;
    const auto& fn = fam.fns[j];
    if (2 * fn.range - 1 > kDenseCap)
      throw std::invalid_argument("sumset_via_fft: hashed range exceeds dense cap");
    auto u = hashed_counts(fn, av);
    auto v = hashed_counts(fn, bv);
    auto z = convolve(u, v, wc);
    std::vector<char> pres(static_cast<std::size_t>(fn.range), 0);
    for (std::size_t k = 0; k < z.size(); ++k)
      if (z[k] > 0) pres[static_cast<std::size_t>(fn.hat(static_cast<i64>(k)))] = 1;
    if (wc) wc->fft_cells += z.size();
    present[j] = std::move(pres);
  }
  for (std::size_t i = 0; i < fam.elements.size(); ++i) {
    auto j = static_cast<std::size_t>(fam.witness[i]);
    i64 s = fam.elements[i];
    if (present[j][static_cast<std::size_t>(fam.fns[j].eval(s))])
      result.push_back(s);
  }
  return PointSet::from_values(out_universe, std::move(result));
}

PointSet sumset_via_fft(const PointSet& A, const PointSet& B,
                        const PointSet& T, const SumsetOptions& opt, Rng* rng,
                        WorkCounter* wc) {
  if (T.dim() != 1)
    throw std::invalid_argument("sumset_via_fft: superset must be 1D");
  if (A.empty() || B.empty() || T.empty())
    return PointSet::from_values(
        std::max<i64>(std::max(T.universe(), A.universe() + B.universe()), 1), {});
  // Effective universe: the largest value the family must separate.
  i64 universe =
      std::max(T.values().back(), A.values().back() + B.values().back()) + 1;
  HashFamily fam = build_family(T.values(), universe, opt, rng, wc);
  return sumset_via_fft(A, B, fam, opt.debug_check, wc);
}

SparseVec sparse_convolution(const SparseVec& u, const SparseVec& v,
                             const std::vector<i64>& T,
                             const SumsetOptions& opt, Rng* rng,
                             WorkCounter* wc) {
  SparseVec out;
  if (u.entries.empty() || v.entries.empty() || T.empty()) return out;
  i64 max_pos = 0;
  for (auto& [p, val] : u.entries) {
    if (p < 0 || val < 0) throw std::invalid_argument("sparse_convolution: negative input");
    max_pos = std::max(max_pos, p);
  }
  i64 max_pos_v = 0;
  for (auto& [p, val] : v.entries) {
    if (p < 0 || val < 0) throw std::invalid_argument("sparse_convolution: negative input");
    max_pos_v = std::max(max_pos_v, p);
  }
  i64 universe = max_pos + max_pos_v + 1;
  for (i64 t : T) universe = std::max(universe, t + 1);

  HashFamily fam = build_family(T, universe, opt, rng, wc);

  std::vector<char> fn_used(fam.fns.size(), 0);
  for (int w : fam.witness) fn_used[static_cast<std::size_t>(w)] = 1;

  std::vector<std::vector<i64>> folded(fam.fns.size());
  for (std::size_t j = 0; j < fam.fns.size(); ++j) {
    if (!fn_used[j]) continue;
    const auto& fn = fam.fns[j];
    if (2 * fn.range - 1 > kDenseCap)
      throw std::invalid_argument("sparse_convolution: hashed range exceeds dense cap");
    std::vector<i64> du(static_cast<std::size_t>(fn.range), 0);
    std::vector<i64> dv(static_cast<std::size_t>(fn.range), 0);
    for (auto& [p, val] : u.entries) du[static_cast<std::size_t>(fn.eval(p))] += val;
    for (auto& [p, val] : v.entries) dv[static_cast<std::size_t>(fn.eval(p))] += val;
    auto z = convolve(du, dv, wc);
    std::vector<i64> fold(static_cast<std::size_t>(fn.range), 0);
    for (std::size_t k = 0; k < z.size(); ++k)
      fold[static_cast<std::size_t>(fn.hat(static_cast<i64>(k)))] += z[k];
    if (wc) wc->fft_cells += z.size();
    folded[j] = std::move(fold);
  }

  std::vector<i64> t_sorted = fam.elements;
  for (std::size_t i = 0; i < t_sorted.size(); ++i) {
    auto j = static_cast<std::size_t>(fam.witness[i]);
    i64 z_s = folded[j][static_cast<std::size_t>(fam.fns[j].eval(t_sorted[i]))];
    if (z_s != 0) out.entries.emplace_back(t_sorted[i], z_s);
  }
  return out;
}

}  // namespace sumkit
