#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>

#include "doctest.h"
#include "sumkit/sumset.hpp"

using namespace sumkit;

namespace {

std::vector<i64> brute_sumset(const std::vector<i64>& a, const std::vector<i64>& b) {
  std::vector<i64> out;
  for (i64 x : a)
    for (i64 y : b) out.push_back(x + y);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<i64> random_set(Rng& rng, std::size_t n, i64 universe) {
  FlatSet seen;
  std::vector<i64> v;
  while (v.size() < n) {
    i64 x = static_cast<i64>(rand_below(rng, static_cast<u64>(universe)));
    if (!seen.contains(x)) { seen.insert(x); v.push_back(x); }
  }
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("sumset_small_universe examples") {
  auto ps = [](std::vector<i64> v, i64 u) { return PointSet::from_values(u, std::move(v)); };
  CHECK(sumset_small_universe(ps({0, 1}, 2), ps({0, 2}, 3)).values() ==
        std::vector<i64>{0, 1, 2, 3});
  CHECK(sumset_small_universe(ps({0}, 1), ps({5}, 6)).values() ==
        std::vector<i64>{5});
  CHECK(sumset_small_universe(ps({1, 3, 5}, 6), ps({2, 4}, 5)).values() ==
        std::vector<i64>{3, 5, 7, 9});
}

TEST_CASE("sumset_via_fft examples") {
  auto ps = [](std::vector<i64> v, i64 u) { return PointSet::from_values(u, std::move(v)); };
  Rng rng(1);
  SumsetOptions opt;
  CHECK(sumset_via_fft(ps({0, 1}, 2), ps({0, 2}, 3), ps({0, 1, 2, 3}, 4), opt, &rng)
            .values() == std::vector<i64>{0, 1, 2, 3});
  // The stray superset element 99 must not be reported.
  CHECK(sumset_via_fft(ps({10, 20}, 21), ps({5}, 6), ps({15, 25, 99}, 100), opt, &rng)
            .values() == std::vector<i64>{15, 25});
  CHECK(sumset_via_fft(ps({0}, 1), ps({0}, 1), ps({0}, 1), opt, &rng).values() ==
        std::vector<i64>{0});
}

TEST_CASE("sumset_via_fft detects a violated superset promise") {
  auto ps = [](std::vector<i64> v, i64 u) { return PointSet::from_values(u, std::move(v)); };
  Rng rng(2);
  SumsetOptions opt;  // debug_check defaults on
  CHECK_THROWS_AS(
      sumset_via_fft(ps({1, 2}, 3), ps({1, 2}, 3), ps({2, 3}, 5), opt, &rng),
      std::invalid_argument);
}

TEST_CASE("sumset_via_fft equals brute force, both modes") {
  Rng rng(7);
  i64 U = i64(1) << 20;
  for (int it = 0; it < 40; ++it) {
    std::size_t na = 1 + rand_below(rng, 48), nb = 1 + rand_below(rng, 48);
    auto a = random_set(rng, na, U / 4);
    auto b = random_set(rng, nb, U / 4);
    auto sums = brute_sumset(a, b);
    // T = A+B plus noise values.
    auto t = sums;
    for (int k = 0; k < 16; ++k)
      t.push_back(static_cast<i64>(rand_below(rng, static_cast<u64>(U))));
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
    PointSet A = PointSet::from_values(U, a), B = PointSet::from_values(U, b),
             T = PointSet::from_values(U, t);
    for (SumsetMode mode : {SumsetMode::randomized, SumsetMode::deterministic}) {
      SumsetOptions opt;
      opt.mode = mode;
      opt.debug_check = false;
      PointSet got = sumset_via_fft(A, B, T, opt, &rng);
      CHECK(got.values() == sums);
    }
  }
}

TEST_CASE("sparse_convolution examples") {
  SumsetOptions opt;
  Rng rng(3);
  SparseVec u{{{0, 1}}};
  SparseVec v{{{0, 1}, {5, 2}}};
  SparseVec z = sparse_convolution(u, v, {0, 5}, opt, &rng);
  CHECK(z.entries == std::vector<std::pair<i64, i64>>{{0, 1}, {5, 2}});

  SparseVec u2{{{1, 2}, {3, 1}}};
  SparseVec v2{{{2, 3}}};
  SparseVec z2 = sparse_convolution(u2, v2, {3, 5}, opt, &rng);
  CHECK(z2.entries == std::vector<std::pair<i64, i64>>{{3, 6}, {5, 3}});
}

TEST_CASE("sparse_convolution equals schoolbook on random sparse inputs") {
  Rng rng(17);
  for (int it = 0; it < 40; ++it) {
    std::size_t nu = 1 + rand_below(rng, 32), nv = 1 + rand_below(rng, 32);
    i64 U = i64(1) << 18;
    auto up = random_set(rng, nu, U);
    auto vp = random_set(rng, nv, U);
    SparseVec u, v;
    for (i64 p : up) u.entries.emplace_back(p, 1 + static_cast<i64>(rand_below(rng, 1 << 16)));
    for (i64 p : vp) v.entries.emplace_back(p, 1 + static_cast<i64>(rand_below(rng, 1 << 16)));
    // Schoolbook oracle over the sparse support.
    FlatMap<i64> expect;
    for (auto& [pu, xu] : u.entries)
      for (auto& [pv, xv] : v.entries) expect[pu + pv] += xu * xv;
    std::vector<i64> T;
    expect.for_each([&](i64 k, const i64&) { T.push_back(k); });
    std::sort(T.begin(), T.end());
    for (SumsetMode mode : {SumsetMode::randomized, SumsetMode::deterministic}) {
      SumsetOptions opt;
      opt.mode = mode;
      SparseVec z = sparse_convolution(u, v, T, opt, &rng);
      REQUIRE(z.entries.size() == expect.size());
      for (auto& [pos, val] : z.entries) {
        const i64* e = expect.find(pos);
        REQUIRE(e != nullptr);
        CHECK(*e == val);
      }
    }
  }
}

TEST_CASE("sumset work counter grows") {
  Rng rng(5);
  WorkCounter wc;
  auto a = random_set(rng, 32, 1 << 16);
  SumsetOptions opt;
  opt.debug_check = false;
  auto sums = brute_sumset(a, a);
  PointSet A = PointSet::from_values(1 << 17, a);
  PointSet T = PointSet::from_values(1 << 17, sums);
  sumset_via_fft(A, A, T, opt, &rng, &wc);
  CHECK(wc.fft_cells > 0);
}
