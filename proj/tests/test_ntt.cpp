#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "sumkit/ntt.hpp"
#include "sumkit/util.hpp"

using namespace sumkit;

namespace {

std::vector<i64> schoolbook(const std::vector<i64>& u, const std::vector<i64>& v) {
  if (u.empty() || v.empty()) return {};
  std::vector<i64> z(u.size() + v.size() - 1, 0);
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) z[i + j] += u[i] * v[j];
  return z;
}

}  // namespace

TEST_CASE("convolve hand examples") {
  CHECK(convolve(std::vector<i64>{1, 0, 2}, std::vector<i64>{3, 1}) ==
        std::vector<i64>{3, 1, 6, 2});
  std::vector<i64> u{5, 7, 0, 2};
  CHECK(convolve(u, std::vector<i64>{1}) == u);  // identity
}

TEST_CASE("convolve equals schoolbook on random inputs") {
  Rng rng(42);
  for (int it = 0; it < 200; ++it) {
    std::size_t nu = 1 + rand_below(rng, 64);
    std::size_t nv = 1 + rand_below(rng, 64);
    std::vector<i64> u(nu), v(nv);
    for (auto& x : u) x = static_cast<i64>(rand_below(rng, 1 << 16));
    for (auto& x : v) x = static_cast<i64>(rand_below(rng, 1 << 16));
    CHECK(convolve(u, v) == schoolbook(u, v));
  }
}

TEST_CASE("convolve spans all CRT widths") {
  Rng rng(43);
  // Value scales chosen so the worst-case output needs 1, 2, then 3 primes
  // while still fitting 64 bits (32 * scale^2 < 2^63).
  for (i64 scale : {i64(1) << 12, i64(1) << 24, i64(1) << 28}) {
    std::vector<i64> u(32), v(32);
    for (auto& x : u) x = static_cast<i64>(rand_below(rng, static_cast<u64>(scale)));
    for (auto& x : v) x = static_cast<i64>(rand_below(rng, static_cast<u64>(scale)));
    CHECK(convolve(u, v) == schoolbook(u, v));
  }
}

TEST_CASE("convolve rejects overflow and negatives") {
  std::vector<i64> big(4, i64(1) << 62);
  CHECK_THROWS_AS(convolve(big, big), std::overflow_error);
  CHECK_THROWS_AS(convolve(std::vector<i64>{-1}, std::vector<i64>{1}),
                  std::invalid_argument);
}

TEST_CASE("convolve counts transform cells") {
  WorkCounter wc;
  convolve(std::vector<i64>{1, 2, 3, 4}, std::vector<i64>{1, 1}, &wc);
  CHECK(wc.fft_cells > 0);
}
