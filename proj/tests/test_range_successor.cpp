#include <random>

#include "doctest.h"
#include "engine_support.hpp"
#include "orq/range_successor.hpp"

using namespace orq;
using namespace orq::testing;

namespace {
using Vec = std::vector<uint64_t>;

std::vector<uint64_t> drain(PosStream s) {
  std::vector<uint64_t> out;
  uint64_t p;
  while (s(p)) out.push_back(p);
  return out;
}

std::vector<uint64_t> brute_positions(const Vec& s, uint64_t s1, uint64_t s2, uint64_t c, uint64_t e) {
  std::vector<uint64_t> out;
  for (uint64_t p = c; p <= e && p < s.size(); ++p)
    if (s1 <= s[p] && s[p] <= s2) out.push_back(p);
  return out;
}

template <class Grid>
void check_grid(const Vec& s, uint64_t sigma, uint64_t k, const Config& cfg, std::mt19937_64& rng, int queries) {
  const Grid g(pack(s, bits_for(sigma - 1)), sigma, k, cfg);
  const uint64_t n = s.size();
  for (int q = 0; q < queries; ++q) {
    uint64_t s1 = rng() % (sigma + 1), s2 = rng() % (sigma + 1);
    if (rng() % 4) s2 = std::max(s1, s2);
    uint64_t c = rng() % (n + 2), e = rng() % (n + 2);
    if (rng() % 6) e = std::max(c, e);
    const auto want = brute_positions(s, s1, s2, c, e);
    const int64_t got = g.next(s1, s2, c, e);
    if (want.empty()) REQUIRE(got == kNotFound);
    else REQUIRE(got == int64_t(want[0]));
    REQUIRE(drain(g.sorted(s1, s2, c, e)) == want);
  }
}
}  // namespace

TEST_CASE("successor examples") {
  auto idx = build_general_succ({0, 3, 1, 2});
  Point p;
  REQUIRE(idx.successor(1, 3, 0, 3, p));
  CHECK(p == Point{3, 1});
  REQUIRE(idx.successor(0, 1, 2, 3, p));
  CHECK(p == Point{1, 2});
  CHECK(!idx.successor(0, 0, 1, 3, p));
  CHECK(!idx.successor(2, 1, 0, 3, p));

  auto idx2 = build_general_succ({2, 0, 3, 1});
  REQUIRE(idx2.successor(0, 3, 1, 3, p));
  CHECK(p == Point{0, 1});

  Vec id(8);
  for (uint64_t i = 0; i < 8; ++i) id[i] = i;
  auto diag = build_general_succ(id);
  for (uint64_t k = 0; k < 8; ++k) {
    REQUIRE(diag.successor(k, k, 0, 7, p));
    CHECK(p == Point{k, k});
  }

  auto empty = build_general_succ({});
  CHECK(!empty.successor(0, 5, 0, 5, p));
}

TEST_CASE("small narrow grid") {
  std::mt19937_64 rng(31);
  for (int it = 0; it < 300; ++it) {
    const uint64_t n = rng() % 300, sigma = 1 + rng() % 8;
    Vec s(n);
    for (auto& v : s) v = rng() % sigma;
    Config cfg;
    cfg.tiny_narrow = it % 3 == 0 ? 1000 : 1 + rng() % 8;
    check_grid<SmallNarrowIndex>(s, sigma, 1, cfg, rng, 50);
  }
}

TEST_CASE("medium narrow grid") {
  std::mt19937_64 rng(32);
  for (int it = 0; it < 200; ++it) {
    const uint64_t n = rng() % 700, sigma = 1 + rng() % 64;
    Vec s(n);
    const uint64_t skew = 1 + rng() % sigma;
    for (auto& v : s) v = rng() % 3 ? rng() % skew : rng() % sigma;
    Config cfg = sweep_config(it, rng);
    cfg.narrow_block = 1 + rng() % 64;
    check_grid<MediumNarrowIndex>(s, sigma, 1 + rng() % 4, cfg, rng, 50);
  }
}

TEST_CASE("successor exhaustive small") {
  Vec x;
  for (uint64_t n = 0; n <= 6; ++n) {
    x.resize(n);
    std::iota(x.begin(), x.end(), 0);
    do {
      for (int ci = 0; ci < 3; ++ci) {
        std::mt19937_64 rng(n * 7 + ci);
        const Config cfg = sweep_config(ci * 2 + 1, rng);
        const auto idx = build_general_succ(x, cfg);
        const auto pts = as_points(x);
        for (uint64_t x1 = 0; x1 <= n; ++x1)
          for (uint64_t x2 = x1; x2 <= n; ++x2)
            for (uint64_t y1 = 0; y1 <= n; ++y1)
              for (uint64_t y2 = y1; y2 <= n; ++y2) {
                const auto want = oracle::brute_successor(pts, {x1, x2, y1, y2});
                Point p;
                const bool got = idx.successor(x1, x2, y1, y2, p);
                REQUIRE(got == want.has_value());
                if (got) REQUIRE(p == *want);
              }
      }
    } while (std::next_permutation(x.begin(), x.end()));
  }
}

TEST_CASE("successor random against the scan") {
  std::mt19937_64 rng(33);
  for (int it = 0; it < 120; ++it) {
    const uint64_t n = it < 10 ? it : 1 + rng() % 4096;
    const auto x = it % 3 == 0 ? clustered_permutation(n, rng) : random_permutation(n, rng);
    const Config cfg = sweep_config(it, rng);
    const auto idx = build_general_succ(x, cfg);
    const auto pts = as_points(x);
    for (int q = 0; q < 100; ++q) {
      const auto r = random_rect(n, rng);
      const auto want = oracle::brute_successor(pts, r);
      Point p;
      const bool got = idx.successor(r.x1, r.x2, r.y1, r.y2, p);
      REQUIRE(got == want.has_value());
      if (got) REQUIRE(p == *want);
    }
  }
}
