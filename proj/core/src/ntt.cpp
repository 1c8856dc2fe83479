#include "sumkit/ntt.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace sumkit {

namespace {

// NTT-friendly primes with primitive root 3.  Two-adicity of the first
// bounds the supported transform length (2^23).  Compile-time moduli let the
// compiler turn every reduction into multiply-shift sequences.
constexpr u64 kP0 = 998244353ULL;
constexpr u64 kP1 = 167772161ULL;
constexpr u64 kP2 = 469762049ULL;
constexpr u64 kPrimes[3] = {kP0, kP1, kP2};

// All moduli are below 2^30, so products of reduced operands fit in u64 and
// the constant modulus lets the compiler emit multiply-shift reductions.
template <u64 MOD>
u64 mulmod(u64 a, u64 b) {
  static_assert(MOD < (u64(1) << 30));
  return (a * b) % MOD;
}

template <u64 MOD>
u64 pow_mod_t(u64 b, u64 e) {
  u64 r = 1 % MOD;
  b %= MOD;
  while (e) {
    if (e & 1) r = mulmod<MOD>(r, b);
    b = mulmod<MOD>(b, b);
    e >>= 1;
  }
  return r;
}

template <u64 MOD>
void ntt(std::vector<u64>& a, bool invert) {
  std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    u64 w = pow_mod_t<MOD>(3, (MOD - 1) / len);
    if (invert) w = pow_mod_t<MOD>(w, MOD - 2);
    for (std::size_t i = 0; i < n; i += len) {
      u64 wn = 1;
      for (std::size_t k = 0; k < len / 2; ++k) {
        u64 x = a[i + k];
        u64 y = mulmod<MOD>(a[i + k + len / 2], wn);
        a[i + k] = x + y < MOD ? x + y : x + y - MOD;
        a[i + k + len / 2] = x >= y ? x - y : x + MOD - y;
        wn = mulmod<MOD>(wn, w);
      }
    }
  }
  if (invert) {
    u64 inv_n = pow_mod_t<MOD>(n % MOD, MOD - 2);
    for (auto& x : a) x = mulmod<MOD>(x, inv_n);
  }
}

template <u64 MOD>
std::vector<u64> convolve_mod(std::span<const i64> u, std::span<const i64> v,
                              WorkCounter* wc) {
  std::size_t out_len = u.size() + v.size() - 1;
  std::size_t n = 1;
  while (n < out_len) n <<= 1;
  std::vector<u64> fa(n, 0), fb(n, 0);
  for (std::size_t i = 0; i < u.size(); ++i) fa[i] = static_cast<u64>(u[i]) % MOD;
  for (std::size_t i = 0; i < v.size(); ++i) fb[i] = static_cast<u64>(v[i]) % MOD;
  ntt<MOD>(fa, false);
  ntt<MOD>(fb, false);
  for (std::size_t i = 0; i < n; ++i) fa[i] = mulmod<MOD>(fa[i], fb[i]);
  ntt<MOD>(fa, true);
  fa.resize(out_len);
  if (wc) wc->fft_cells += 3 * static_cast<u64>(n);
  return fa;
}

u64 pow_mod(u64 b, u64 e, u64 m) {
  u64 r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = static_cast<u64>((static_cast<unsigned __int128>(r) * b) % m);
    b = static_cast<u64>((static_cast<unsigned __int128>(b) * b) % m);
    e >>= 1;
  }
  return r;
}

}  // namespace

std::vector<i64> convolve(std::span<const i64> u, std::span<const i64> v,
                          WorkCounter* wc) {
  if (u.empty() || v.empty()) return {};
  if (static_cast<i64>(u.size()) > kDenseCap || static_cast<i64>(v.size()) > kDenseCap ||
      static_cast<i64>(u.size() + v.size() - 1) > kDenseCap)
    throw std::invalid_argument("convolve: length exceeds dense cap");

  i64 max_u = 0, max_v = 0;
  for (i64 x : u) {
    if (x < 0) throw std::invalid_argument("convolve: negative entry");
    max_u = std::max(max_u, x);
  }
  for (i64 x : v) {
    if (x < 0) throw std::invalid_argument("convolve: negative entry");
    max_v = std::max(max_v, x);
  }
  std::size_t out_len = u.size() + v.size() - 1;
  if (max_u == 0 || max_v == 0) return std::vector<i64>(out_len, 0);

  unsigned __int128 sum_u = 0, sum_v = 0;
  for (i64 x : u) sum_u += static_cast<unsigned __int128>(x);
  for (i64 x : v) sum_v += static_cast<unsigned __int128>(x);
  unsigned __int128 bound = static_cast<unsigned __int128>(std::min(u.size(), v.size()));
  bound *= static_cast<unsigned __int128>(max_u);
  bound *= static_cast<unsigned __int128>(max_v);
  bound = std::min(bound, sum_u * static_cast<unsigned __int128>(max_v));
  bound = std::min(bound, sum_v * static_cast<unsigned __int128>(max_u));
  if (bound > static_cast<unsigned __int128>(std::numeric_limits<i64>::max()))
    throw std::overflow_error("convolve: output entries may exceed 64-bit exact range");

  int primes_needed = 1;
  unsigned __int128 prod = kPrimes[0];
  while (prod <= bound) {
    if (primes_needed == 3)
      throw std::overflow_error("convolve: output exceeds CRT range");
    prod *= kPrimes[primes_needed++];
  }

  std::vector<std::vector<u64>> residues;
  residues.reserve(static_cast<std::size_t>(primes_needed));
  residues.push_back(convolve_mod<kP0>(u, v, wc));
  if (primes_needed > 1) residues.push_back(convolve_mod<kP1>(u, v, wc));
  if (primes_needed > 2) residues.push_back(convolve_mod<kP2>(u, v, wc));

  std::vector<i64> z(out_len);
  if (primes_needed == 1) {
    for (std::size_t k = 0; k < out_len; ++k) z[k] = static_cast<i64>(residues[0][k]);
    return z;
  }
  // Garner reconstruction into __int128.
  for (std::size_t k = 0; k < out_len; ++k) {
    unsigned __int128 x = residues[0][k];
    unsigned __int128 m = kPrimes[0];
    for (int p = 1; p < primes_needed; ++p) {
      u64 mp = kPrimes[p];
      u64 x_mod = static_cast<u64>(x % mp);
      u64 diff = residues[p][k] >= x_mod ? residues[p][k] - x_mod
                                         : residues[p][k] + mp - x_mod;
      u64 inv = pow_mod(static_cast<u64>(m % mp), mp - 2, mp);
      u64 t = static_cast<u64>((static_cast<unsigned __int128>(diff) * inv) % mp);
      x += m * t;
      m *= mp;
    }
    z[k] = static_cast<i64>(x);
  }
  return z;
}

}  // namespace sumkit
