#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>

#include "doctest.h"
#include "sumkit/hash_family.hpp"

using namespace sumkit;

namespace {

std::vector<i64> random_set(Rng& rng, std::size_t n, i64 universe) {
  std::vector<i64> v;
  FlatSet seen;
  while (v.size() < n) {
    i64 x = static_cast<i64>(rand_below(rng, static_cast<u64>(universe)));
    if (!seen.contains(x)) {
      seen.insert(x);
      v.push_back(x);
    }
  }
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("pseudo-additivity holds for built functions") {
  Rng rng(1);
  i64 U = i64(1) << 30;
  auto T = random_set(rng, 64, U);
  HashFamily fam = build_family_randomized(T, U, rng);
  HashFamily det = build_family_deterministic(T, U, {4.0, 2, 64});
  for (const auto* f : {&fam, &det}) {
    for (const auto& fn : f->fns) {
      for (int it = 0; it < 10000; ++it) {
        i64 a = static_cast<i64>(rand_below(rng, static_cast<u64>(U / 2)));
        i64 b = static_cast<i64>(rand_below(rng, static_cast<u64>(U / 2)));
        REQUIRE(fn.hat(fn.eval(a) + fn.eval(b)) == fn.eval(a + b));
      }
    }
  }
}

TEST_CASE("randomized family: singleton T") {
  Rng rng(2);
  HashFamily fam = build_family_randomized({0}, 1 << 20, rng);
  CHECK(audit_pseudo_perfect(fam));
  CHECK(fam.elements.size() == 1);
}

TEST_CASE("randomized family: contiguous T in a large universe") {
  Rng rng(3);
  std::vector<i64> T(32);
  for (i64 i = 0; i < 32; ++i) T[static_cast<std::size_t>(i)] = i;
  HashFamily fam = build_family_randomized(T, i64(1) << 20, rng);
  CHECK(audit_pseudo_perfect(fam));
}

TEST_CASE("small universe collapses to the identity function") {
  Rng rng(4);
  std::vector<i64> T{0, 5, 9};
  HashFamily fam = build_family_randomized(T, 64, rng);
  CHECK(fam.is_identity());
  CHECK(audit_pseudo_perfect(fam));
}

TEST_CASE("deterministic family: explicit small cases") {
  HashFamily one = build_family_deterministic({0, 3, 7}, i64(1) << 16, {4.0, 1, 64});
  CHECK(audit_pseudo_perfect(one));
  HashFamily single = build_family_deterministic({12}, i64(1) << 16, {4.0, 2, 64});
  CHECK(single.fns.size() == 1);
  CHECK(audit_pseudo_perfect(single));
}

TEST_CASE("deterministic family: arithmetic progression, size bound") {
  std::vector<i64> T;
  for (i64 x = 0; x <= 248; x += 8) T.push_back(x);  // 32 elements
  for (int levels : {1, 2}) {
    HashFamily fam =
        build_family_deterministic(T, i64(1) << 20, {4.0, levels, 64});
    CHECK(audit_pseudo_perfect(fam));
    double bound = static_cast<double>(i64(1) << levels) *
                       std::log2(static_cast<double>(T.size())) + 1.0;
    CHECK(static_cast<double>(fam.fns.size()) <= bound);
  }
}

TEST_CASE("deterministic family: random sets audit clean") {
  Rng rng(5);
  for (int it = 0; it < 20; ++it) {
    std::size_t n = 1 + rand_below(rng, 200);
    auto T = random_set(rng, n, i64(1) << 28);
    HashFamily fam = build_family_deterministic(T, i64(1) << 28, {4.0, 2, 64});
    CHECK(audit_pseudo_perfect(fam));
    double bound =
        4.0 * std::log2(static_cast<double>(std::max<std::size_t>(n, 2))) + 1.0;
    CHECK(static_cast<double>(fam.fns.size()) <= bound);
  }
}

TEST_CASE("randomized family is Las Vegas and reproducible per seed") {
  Rng r1(99), r2(99);
  auto T = random_set(r1, 100, i64(1) << 26);
  Rng s1(7), s2(7);
  HashFamily f1 = build_family_randomized(T, i64(1) << 26, s1);
  HashFamily f2 = build_family_randomized(T, i64(1) << 26, s2);
  REQUIRE(f1.fns.size() == f2.fns.size());
  for (std::size_t i = 0; i < f1.fns.size(); ++i)
    CHECK(f1.fns[i].primes == f2.fns[i].primes);
}
