#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "sumkit/types.hpp"

namespace sumkit {

using Rng = std::mt19937_64;

/// Uniform draw from [0, n) without std::uniform_int_distribution, whose
/// output is not pinned down by the standard.  Lemire reduction keeps runs
/// reproducible across compilers.
inline u64 rand_below(Rng& rng, u64 n) {
  if (n == 0) return 0;
  unsigned __int128 m = static_cast<unsigned __int128>(rng()) * n;
  return static_cast<u64>(m >> 64);
}

/// First `want` elements of a random permutation of [0, pop).
inline std::vector<std::size_t> sample_indices(Rng& rng, std::size_t pop,
                                               std::size_t want) {
  if (want >= pop) {
    std::vector<std::size_t> all(pop);
    for (std::size_t i = 0; i < pop; ++i) all[i] = i;
    return all;
  }
  std::vector<std::size_t> idx(pop);
  for (std::size_t i = 0; i < pop; ++i) idx[i] = i;
  for (std::size_t i = 0; i < want; ++i) {
    std::size_t j = i + static_cast<std::size_t>(rand_below(rng, pop - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(want);
  return idx;
}

/// Open-addressing set of int64 keys.  The solvers probe membership hundreds
/// of millions of times, which std::unordered_set cannot sustain.
class FlatSet {
 public:
  FlatSet() { rehash(16); }
  explicit FlatSet(const std::vector<i64>& keys) {
    std::size_t want = keys.size() * 2 + 16;
    std::size_t cap = 16;
    while (cap < want) cap <<= 1;
    rehash(cap);
    for (i64 k : keys) insert(k);
  }

  void insert(i64 key) {
    if ((size_ + 1) * 10 >= cap_ * 7) rehash(cap_ * 2);
    std::size_t i = slot(key);
    while (used_[i]) {
      if (keys_[i] == key) return;
      i = (i + 1) & (cap_ - 1);
    }
    used_[i] = 1;
    keys_[i] = key;
    ++size_;
  }

  bool contains(i64 key) const {
    std::size_t i = slot(key);
    while (used_[i]) {
      if (keys_[i] == key) return true;
      i = (i + 1) & (cap_ - 1);
    }
    return false;
  }

  std::size_t size() const { return size_; }

 private:
  static u64 mix(u64 x) {
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdULL;
    x ^= x >> 33;
    x *= 0xc4ceb9fe1a85ec53ULL;
    x ^= x >> 33;
    return x;
  }
  std::size_t slot(i64 key) const {
    return static_cast<std::size_t>(mix(static_cast<u64>(key))) & (cap_ - 1);
  }
  void rehash(std::size_t next) {
    std::vector<i64> keys = std::move(keys_);
    std::vector<char> used = std::move(used_);
    cap_ = next;
    keys_.assign(cap_, 0);
    used_.assign(cap_, 0);
    size_ = 0;
    for (std::size_t i = 0; i < used.size(); ++i)
      if (used[i]) insert(keys[i]);
  }

  std::size_t cap_ = 0;
  std::size_t size_ = 0;
  std::vector<i64> keys_;
  std::vector<char> used_;
};

/// Map from int64 keys to a small payload, same probing scheme as FlatSet.
template <typename V>
class FlatMap {
 public:
  FlatMap() { rehash(16); }

  V& operator[](i64 key) {
    if ((size_ + 1) * 10 >= cap_ * 7) rehash(cap_ * 2);
    std::size_t i = slot(key);
    while (used_[i]) {
      if (keys_[i] == key) return vals_[i];
      i = (i + 1) & (cap_ - 1);
    }
    used_[i] = 1;
    keys_[i] = key;
    vals_[i] = V{};
    ++size_;
    return vals_[i];
  }

  const V* find(i64 key) const {
    std::size_t i = slot(key);
    while (used_[i]) {
      if (keys_[i] == key) return &vals_[i];
      i = (i + 1) & (cap_ - 1);
    }
    return nullptr;
  }

  std::size_t size() const { return size_; }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < cap_; ++i)
      if (used_[i]) f(keys_[i], vals_[i]);
  }

 private:
  static u64 mix(u64 x) {
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdULL;
    x ^= x >> 33;
    x *= 0xc4ceb9fe1a85ec53ULL;
    x ^= x >> 33;
    return x;
  }
  std::size_t slot(i64 key) const {
    return static_cast<std::size_t>(mix(static_cast<u64>(key))) & (cap_ - 1);
  }
  void rehash(std::size_t next) {
    std::vector<i64> keys = std::move(keys_);
    std::vector<V> vals = std::move(vals_);
    std::vector<char> used = std::move(used_);
    cap_ = next;
    keys_.assign(cap_, 0);
    vals_.assign(cap_, V{});
    used_.assign(cap_, 0);
    size_ = 0;
    for (std::size_t i = 0; i < used.size(); ++i)
      if (used[i]) (*this)[keys[i]] = vals[i];
  }

  std::size_t cap_ = 0;
  std::size_t size_ = 0;
  std::vector<i64> keys_;
  std::vector<V> vals_;
  std::vector<char> used_;
};

inline i64 round_up_even(i64 x) {
  if (x < 2) return 2;
  return (x % 2 == 0) ? x : x + 1;
}

}  // namespace sumkit
