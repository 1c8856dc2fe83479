#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sstream>

#include "doctest.h"
#include "sumkit/gen.hpp"
#include "sumkit/grid.hpp"
#include "sumkit/io.hpp"
#include "sumkit/util.hpp"

using namespace sumkit;

TEST_CASE("cell_of floor division") {
  GridConfig g2(4, 16, 2);
  CHECK(cell_of(Point{5, 6}, g2) == CellLabel{1, 1});
  CHECK(cell_of(Point{0, 0}, g2) == CellLabel{0, 0});
  GridConfig g3(4, 16, 3);
  CHECK(cell_of(Point{7, 8, 3}, g3) == CellLabel{1, 2, 0});
  CHECK_THROWS_AS(cell_of(Point{1, 2}, g3), std::invalid_argument);
}

TEST_CASE("align_decompose splits by residue mask") {
  GridConfig g(4, 8, 2);
  PointSet s = PointSet::from_points(2, 8, {{0, 0}, {1, 3}});
  auto parts = align_decompose(s, g);
  REQUIRE(parts.size() == 2);
  CHECK(parts[0].mask == 0u);
  CHECK(parts[0].subset == PointSet::from_points(2, 8, {{0, 0}}));
  CHECK(parts[1].mask == 2u);  // y shifted
  CHECK(parts[1].shift == std::vector<i64>{0, 2});
  CHECK(parts[1].subset == PointSet::from_points(2, 8, {{1, 1}}));
}

TEST_CASE("align_decompose of an aligned set is a single unshifted part") {
  GridConfig g(4, 8, 2);
  PointSet s = PointSet::from_points(2, 8, {{0, 1}, {4, 5}});
  auto parts = align_decompose(s, g);
  REQUIRE(parts.size() == 1);
  CHECK(parts[0].mask == 0u);
  CHECK(parts[0].subset == s);
}

TEST_CASE("align_decompose of the empty set") {
  GridConfig g(4, 8, 2);
  CHECK(align_decompose(PointSet(2, 8, {}), g).empty());
}

TEST_CASE("align_decompose round-trip reproduces the input") {
  Rng rng(7);
  for (int it = 0; it < 20; ++it) {
    int d = 1 + static_cast<int>(rand_below(rng, 3));
    GridConfig g(4, 64, d);
    std::vector<i64> flat;
    for (int i = 0; i < 40; ++i)
      for (int j = 0; j < d; ++j)
        flat.push_back(static_cast<i64>(rand_below(rng, 64)));
    PointSet s(d, 64, flat);
    auto parts = align_decompose(s, g);
    std::vector<i64> rebuilt;
    for (const auto& part : parts)
      for (std::size_t i = 0; i < part.subset.size(); ++i) {
        auto p = part.subset.point(i);
        for (int j = 0; j < d; ++j)
          rebuilt.push_back(p[static_cast<std::size_t>(j)] +
                            part.shift[static_cast<std::size_t>(j)]);
      }
    CHECK(PointSet(d, 64, rebuilt) == s);
    for (const auto& part : parts)
      for (std::size_t i = 0; i < part.subset.size(); ++i) {
        auto p = part.subset.point(i);
        for (int j = 0; j < d; ++j) CHECK(p[static_cast<std::size_t>(j)] % 4 < 2);
      }
  }
}

TEST_CASE("flatten_to_1d hand example") {
  // side 4, universe 8, dim 2: cell volume 16, cell base 2*ceil(8/4) = 4.
  GridConfig g(4, 8, 2);
  CHECK(flatten_point(Point{5, 6}, g) == 89);
  CHECK(flatten_point(Point{0, 0}, g) == 0);
}

TEST_CASE("flatten_to_1d is the identity in 1D") {
  GridConfig g(4, 64, 1);
  i64 prev = -1;
  for (i64 x = 0; x < 64; ++x) {
    i64 f = flatten_point(Point{x}, g);
    CHECK(f == x);
    CHECK(f > prev);
    prev = f;
  }
}

TEST_CASE("flatten_to_1d rejects unaligned input and overflow") {
  GridConfig g(4, 8, 2);
  PointSet bad = PointSet::from_points(2, 8, {{3, 0}});
  CHECK_THROWS_AS(flatten_to_1d(bad, g), std::invalid_argument);
  GridConfig huge(1 << 20, i64(1) << 40, 3);
  CHECK_THROWS_AS(flatten_sum_universe(huge), std::overflow_error);
}

TEST_CASE("flatten additivity and cell additivity on aligned sets") {
  Rng rng(11);
  for (int it = 0; it < 30; ++it) {
    int d = 1 + static_cast<int>(rand_below(rng, 3));
    i64 side = 2 * (1 + static_cast<i64>(rand_below(rng, 4)));
    GridConfig g(side, 64, d);
    auto draw_aligned = [&]() {
      Point p(static_cast<std::size_t>(d));
      for (int j = 0; j < d; ++j) {
        i64 cell = static_cast<i64>(rand_below(rng, static_cast<u64>(64 / side)));
        i64 off = static_cast<i64>(rand_below(rng, static_cast<u64>(side / 2)));
        p[static_cast<std::size_t>(j)] = cell * side + off;
      }
      return p;
    };
    for (int k = 0; k < 30; ++k) {
      Point a = draw_aligned(), b = draw_aligned();
      Point ab(a.size());
      for (std::size_t j = 0; j < a.size(); ++j) ab[j] = a[j] + b[j];
      CHECK(flatten_point(a, g) + flatten_point(b, g) == flatten_point(ab, g));
      CellLabel ca = cell_of(a, g), cb = cell_of(b, g), cab = cell_of(ab, g);
      for (std::size_t j = 0; j < ca.size(); ++j) CHECK(ca[j] + cb[j] == cab[j]);
    }
  }
}

TEST_CASE("is_monotone") {
  CHECK(is_monotone(PointSet::from_points(2, 4, {{0, 0}, {1, 1}, {2, 2}})));
  CHECK_FALSE(is_monotone(PointSet::from_points(2, 4, {{0, 1}, {1, 0}})));
  CHECK(is_monotone(PointSet::from_points(3, 4, {{1, 2, 3}})));
  auto v = monotone_violation(PointSet::from_points(2, 4, {{0, 1}, {1, 0}}));
  REQUIRE(v.has_value());
  CHECK(*v == 1);
}

TEST_CASE("gen_monotone postconditions") {
  for (u64 seed : {1ull, 2ull, 3ull}) {
    PointSet a = gen_monotone(100, 2, seed);
    CHECK(a.size() == 100);
    CHECK(a.universe() == 100);
    CHECK(is_monotone(a));
    CHECK(a.size() <= 2 * 100);  // monotone sets in [n]^d have <= dn points
  }
  PointSet b = gen_monotone(100, 2, 1);
  CHECK(b == gen_monotone(100, 2, 1));  // deterministic in seed
}

TEST_CASE("gen_bounded_monotone_seq postconditions") {
  auto v = gen_bounded_monotone_seq(8, 2, 7);
  CHECK(v.size() == 8);
  for (std::size_t i = 0; i < v.size(); ++i) {
    CHECK(v[i] >= 0);
    CHECK(v[i] < 16);
    if (i) CHECK(v[i] >= v[i - 1]);
  }
}

TEST_CASE("gen_clustered audit") {
  auto inst = gen_clustered(64, 8, 64, 3);
  CHECK(inst.points.size() == 64);
  CHECK(inst.desc.K == 8);
  CHECK(inst.desc.L == 64);
  // Every point lies in one of at most K aligned intervals of length L.
  FlatSet starts;
  i64 used = 0;
  for (i64 v : inst.points.values()) {
    i64 s = (v / 64) * 64;
    if (!starts.contains(s)) { starts.insert(s); ++used; }
  }
  CHECK(used <= 8);
  CHECK_THROWS_AS(gen_clustered(100, 2, 8, 1), std::invalid_argument);
}

TEST_CASE("gen_string") {
  auto s = gen_string(50, 2, 2);
  CHECK(s.size() == 50);
  for (char ch : s) CHECK((ch == '0' || ch == '1'));
}

TEST_CASE("instance file round trip is bit-exact") {
  PointSet s = gen_monotone(30, 2, 5);
  std::ostringstream out;
  write_instance(out, s);
  std::istringstream in(out.str());
  PointSet back = read_instance(in);
  CHECK(back == s);
  std::ostringstream out2;
  write_instance(out2, back);
  CHECK(out.str() == out2.str());
}

TEST_CASE("sequence and string file round trips") {
  auto seq = gen_bounded_monotone_seq(12, 3, 9);
  std::ostringstream out;
  write_sequence(out, seq, 3);
  std::istringstream in(out.str());
  auto sf = read_sequence(in);
  CHECK(sf.values == seq);
  CHECK(sf.c == 3);

  std::ostringstream sout;
  write_string(sout, "0110", 2);
  std::istringstream sin(sout.str());
  auto st = read_string(sin);
  CHECK(st.text == "0110");
  CHECK(st.alphabet == 2);
}

TEST_CASE("pointset rejects out-of-universe coordinates") {
  CHECK_THROWS_AS(PointSet::from_values(4, {4}), std::invalid_argument);
  CHECK_THROWS_AS(PointSet::from_values(4, {-1}), std::invalid_argument);
}
