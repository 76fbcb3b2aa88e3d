#include <algorithm>
#include <random>

#include "doctest.h"
#include "orq/ball.hpp"

using namespace orq;

namespace {
using Vec = std::vector<uint64_t>;

// Explicit N(v) of every node: points (x, y) with x in v's range, by y.
std::vector<Point> explicit_list(const Vec& x, uint64_t lo, uint64_t hi) {
  std::vector<Point> out;
  for (uint64_t y = 0; y < x.size(); ++y)
    if (lo <= x[y] && x[y] <= hi) out.push_back({x[y], y});
  return out;
}

void check_ball(const Vec& x, uint64_t sigma, uint64_t d, const BallParams& p, const Config& cfg,
                unsigned max_hops = ~0u, bool all_ranges = true) {
  BallIndex b(build_wavelet_plain(x, sigma, d), p, cfg);
  b.release_arrays();
  const auto& t = b.tree();
  for (unsigned l = 0; l <= t.levels(); ++l)
    for (uint64_t k = 0; k < t.node_count(l); ++k) {
      const NodeId v{l, k};
      const auto want = explicit_list(x, t.range_lo(v), t.range_hi(v));
      REQUIRE(t.node_size(v) == want.size());
      for (uint64_t i = 0; i < want.size(); ++i) {
        unsigned hops = 0;
        REQUIRE(b.point(v, i) == want[i]);
        REQUIRE(b.point_at(l, t.start(v) + i, &hops) == want[i]);
        REQUIRE(hops <= max_hops);
      }
      CHECK_THROWS_WITH((void)b.point(v, want.size()), "position out of bounds");
      const uint64_t n = x.size();
      for (uint64_t c = 0; c <= n; ++c)
        for (uint64_t e = c; e <= n + 1; ++e) {
          if (!all_ranges && (c + e) % 5 != 0) continue;
          int64_t lo = -1, hi = -1;
          for (uint64_t i = 0; i < want.size(); ++i)
            if (c <= want[i].y && want[i].y <= e) {
              if (lo < 0) lo = static_cast<int64_t>(i);
              hi = static_cast<int64_t>(i);
            }
          const Range r = b.noderange(c, e, v);
          if (lo < 0) REQUIRE(r.empty());
          else REQUIRE(r == Range{lo, hi});
        }
    }
}

std::vector<std::pair<BallParams, unsigned>> all_params(unsigned levels, const Config& cfg) {
  const unsigned cap = cfg.resolved().inv_epsilon;
  return {{ball_generic(2), ~0u},
          {ball_generic(3), ~0u},
          {ball_large_fanout(LargeFanoutVariant::kA, levels, cfg), ~0u},
          {ball_large_fanout(LargeFanoutVariant::kB, levels, cfg), cap},
          {ball_small_grid(SmallGridMode::kBalanced, levels, cfg), ~0u},
          {ball_small_grid(SmallGridMode::kConstantPoint, levels, cfg), cap}};
}
}  // namespace

TEST_CASE("ball examples") {
  const Vec x{1, 0, 3, 2};
  BallIndex b(build_wavelet_plain(x, 4, 2), ball_generic(2));
  b.release_arrays();
  CHECK(b.point({1, 1}, 0) == Point{3, 2});
  CHECK(b.point(b.tree().leaf(3), 0) == Point{3, 2});
  for (uint64_t i = 0; i < 4; ++i) CHECK(b.point(b.tree().root(), i) == Point{x[i], i});
  CHECK(b.noderange(1, 3, {1, 0}) == Range{1, 1});
  CHECK(b.noderange(0, 3, b.tree().root()) == Range{0, 3});
  CHECK(b.noderange(2, 3, {1, 0}).empty());
  CHECK_THROWS_WITH((void)b.noderange(3, 1, {1, 0}), "invalid range");

  BallIndex flat(build_wavelet_plain(Vec{0, 0, 0, 0}, 4, 2),
                 ball_small_grid(SmallGridMode::kConstantPoint, 2, {}));
  CHECK(flat.point({1, 0}, 2) == Point{0, 2});
  CHECK(flat.point(flat.tree().leaf(0), 2) == Point{0, 2});
}

TEST_CASE("stored levels return coordinates directly") {
  Config cfg;
  cfg.inv_epsilon = 2;
  std::mt19937_64 rng(1);
  Vec x(64);
  for (auto& v : x) v = rng() % 256;
  BallIndex b(build_wavelet_plain(x, 256, 2), ball_small_grid(SmallGridMode::kConstantPoint, 8, cfg), cfg);
  b.release_arrays();
  // tau = ceil(8^(1/2)) = 3: levels 3 and 6 carry color 1 and store coordinates.
  CHECK(b.params().tau == 3);
  CHECK(b.stores_level(3));
  CHECK(b.stores_level(6));
  CHECK(!b.stores_level(4));
  unsigned hops = 9;
  (void)b.point_at(3, 5, &hops);
  CHECK(hops == 0);
  (void)b.point_at(4, 5, &hops);
  CHECK(hops == 1);
}

TEST_CASE("ball exhaustive small") {
  for (uint64_t sigma = 1; sigma <= 8; ++sigma)
    for (unsigned len = 0; len <= 4; ++len) {
      uint64_t total = 1;
      for (unsigned i = 0; i < len; ++i) total *= sigma;
      for (uint64_t code = 0; code < total; code += 1 + code % 5) {
        Vec x(len);
        uint64_t c = code;
        for (auto& v : x) v = c % sigma, c /= sigma;
        for (uint64_t d : {2u, 4u}) {
          const unsigned levels = build_wavelet_plain(Vec{}, sigma, d).levels();
          Config cfg;
          for (auto& [p, hops] : all_params(levels, cfg)) check_ball(x, sigma, d, p, cfg, hops);
        }
      }
    }
}

TEST_CASE("ball random with every partial rank regime") {
  std::mt19937_64 rng(8);
  for (int it = 0; it < 120; ++it) {
    const uint64_t n = 1 + rng() % 60;
    const uint64_t sigma = 1 + rng() % 300;
    const uint64_t d = uint64_t{2} << (rng() % 4);
    Vec x(n);
    for (auto& v : x) v = rng() % sigma;
    Config cfg;
    cfg.inv_epsilon = 1 + rng() % 3;
    if (it % 3 == 1) {  // chunked partial ranks
      cfg.small_alphabet_max = 2;
      cfg.chunked_alphabet_max = 1u << 12;
    } else if (it % 3 == 2) {  // explicit answers
      cfg.small_alphabet_max = 2;
      cfg.chunked_alphabet_max = 2;
    }
    if (it % 4 == 0) cfg.table_cap_bits = 0;
    cfg.pred_block = 2 + rng() % 8;
    cfg.patricia_block = 2 + rng() % 3;
    const unsigned levels = build_wavelet_plain(Vec{}, sigma, d).levels();
    for (auto& [p, hops] : all_params(levels, cfg)) check_ball(x, sigma, d, p, cfg, hops, false);
  }
}

TEST_CASE("constant-point mode hop ceiling on a permutation") {
  std::mt19937_64 rng(12);
  const uint64_t n = 1 << 14;
  Vec x(n);
  for (uint64_t i = 0; i < n; ++i) x[i] = i;
  std::shuffle(x.begin(), x.end(), rng);
  for (unsigned inv_eps : {1u, 2u, 3u}) {
    Config cfg;
    cfg.inv_epsilon = inv_eps;
    auto t = build_wavelet_plain(x, n, 4);
    const unsigned levels = t.levels();
    BallIndex b(std::move(t), ball_large_fanout(LargeFanoutVariant::kB, levels, cfg), cfg);
    b.release_arrays();
    for (int q = 0; q < 3000; ++q) {
      const unsigned l = rng() % (levels + 1);
      const uint64_t p = rng() % n;
      unsigned hops = 0;
      const OpCounters before = counters();
      const Point pt = b.point_at(l, p, &hops);
      REQUIRE((counters() - before).element_probes == 1);
      REQUIRE(hops <= inv_eps);
      REQUIRE(x[pt.y] == pt.x);
    }
  }
}
