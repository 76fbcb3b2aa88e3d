#include <random>

#include "doctest.h"
#include "engine_support.hpp"
#include "orq/sorted_report.hpp"

using namespace orq;
using namespace orq::testing;

namespace {
std::vector<uint64_t> ys(const std::vector<Point>& p) {
  std::vector<uint64_t> out;
  for (const auto& q : p) out.push_back(q.y);
  return out;
}

PointStream list_stream(std::vector<Point> pts) {
  return [pts = std::move(pts), i = size_t{0}](Point& out) mutable {
    if (i == pts.size()) return false;
    out = pts[i++];
    return true;
  };
}
}  // namespace

TEST_CASE("merge sorted streams") {
  std::vector<PointStream> two;
  two.push_back(list_stream({{9, 1}}));
  two.push_back(list_stream({{9, 2}}));
  auto m = merge_sorted_streams(std::move(two));
  CHECK(ys(take(m)) == std::vector<uint64_t>{1, 2});

  std::vector<PointStream> one;
  one.push_back(list_stream({{1, 4}, {0, 6}}));
  auto id = merge_sorted_streams(std::move(one));
  CHECK(take(id) == std::vector<Point>{{1, 4}, {0, 6}});

  std::vector<PointStream> three;
  three.push_back(list_stream({{0, 1}, {0, 5}}));
  three.push_back(list_stream({{0, 2}}));
  three.push_back(list_stream({{0, 3}}));
  auto m3 = merge_sorted_streams(std::move(three));
  CHECK(ys(take(m3)) == std::vector<uint64_t>{1, 2, 3, 5});

  std::vector<PointStream> bad;
  bad.push_back(list_stream({{0, 4}, {0, 3}}));
  bad.push_back(list_stream({{0, 10}}));
  auto mb = merge_sorted_streams(std::move(bad));
  CHECK_THROWS_WITH(take(mb), "stream order violation");

  // Lazy: only the heads are pulled before the first point is asked for.
  int pulls = 0;
  std::vector<PointStream> lazy;
  for (int i = 0; i < 3; ++i)
    lazy.push_back([&pulls, i, k = 0](Point& p) mutable {
      ++pulls;
      p = {0, uint64_t(10 * k++ + i)};
      return true;
    });
  auto ml = merge_sorted_streams(std::move(lazy));
  CHECK(ys(take(ml, 2)) == std::vector<uint64_t>{0, 1});
  CHECK(pulls == 5);
}

TEST_CASE("sorted report examples") {
  auto idx = build_general_sorted({0, 3, 1, 2});
  auto all = idx.sorted(0, 3, 0, 3);
  CHECK(take(all) == std::vector<Point>{{0, 0}, {3, 1}, {1, 2}, {2, 3}});
  auto pre = idx.sorted(0, 3, 1, 3);
  CHECK(take(pre, 2) == std::vector<Point>{{3, 1}, {1, 2}});
  auto none = idx.sorted(0, 3, 1, 3);
  CHECK(take(none, 0).empty());
  auto mid = idx.sorted(1, 2, 0, 3);
  CHECK(take(mid) == std::vector<Point>{{1, 2}, {2, 3}});
  auto empty = build_general_sorted({});
  auto e = empty.sorted(0, 9, 0, 9);
  CHECK(take(e).empty());
}

TEST_CASE("sorted report random against the scan") {
  std::mt19937_64 rng(41);
  for (int it = 0; it < 120; ++it) {
    const uint64_t n = it < 10 ? it : 1 + rng() % 4096;
    const auto x = it % 3 == 0 ? clustered_permutation(n, rng) : random_permutation(n, rng);
    const Config cfg = sweep_config(it, rng);
    const auto idx = build_general_sorted(x, cfg);
    const auto pts = as_points(x);
    for (int q = 0; q < 100; ++q) {
      const auto r = random_rect(n, rng);
      const auto want = oracle::brute_sorted(pts, r, ~uint64_t{0});
      auto s = idx.sorted(r.x1, r.x2, r.y1, r.y2);
      REQUIRE(take(s) == want);
      for (uint64_t k : {0ul, 1ul, 2ul, uint64_t(want.size())}) {
        auto sk = idx.sorted(r.x1, r.x2, r.y1, r.y2);
        REQUIRE(take(sk, k) == oracle::brute_sorted(pts, r, k));
      }
    }
  }
}

TEST_CASE("escalation happens only after a full run of sampled hits") {
  std::mt19937_64 rng(42);
  Config cfg;
  cfg.three_sided_block = 16;
  cfg.narrow_block = 16;
  cfg.escalation = 3;
  const uint64_t n = 3000;
  const auto x = random_permutation(n, rng);
  const auto idx = build_general_sorted(x, cfg);
  const auto pts = as_points(x);
  uint64_t total = 0;
  for (int q = 0; q < 300; ++q) {
    const auto r = random_rect(n, rng);
    const OpCounters before = counters();
    auto s = idx.sorted(r.x1, r.x2, r.y1, r.y2);
    const auto got = take(s);
    const uint64_t esc = (counters() - before).escalations;
    total += esc;
    // every escalated block contributes at least `escalation` reported points
    REQUIRE(esc * cfg.escalation <= got.size());
    REQUIRE(got == oracle::brute_sorted(pts, r, ~uint64_t{0}));
  }
  CHECK(total > 0);
}
