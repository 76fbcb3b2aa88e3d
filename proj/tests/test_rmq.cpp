#include <random>

#include "doctest.h"
#include "orq/oracle.hpp"
#include "orq/rmq.hpp"

using namespace orq;

namespace {
using Vec = std::vector<uint64_t>;

struct Probe {
  const Vec* a;
  uint64_t operator()(uint64_t i) const { return (*a)[i]; }
};

void check_pair(const Vec& a, uint64_t i, uint64_t j, const RmqIndex& r, const PackedRmqIndex& p) {
  const uint64_t mn = oracle::brute_rmq(a, i, j, false), mx = oracle::brute_rmq(a, i, j, true);
  REQUIRE(r.rmq(i, j) == mn);
  REQUIRE(r.rMq(i, j) == mx);
  Probe pr{&a};
  const uint64_t before = counters().element_probes;
  REQUIRE(p.rmq(pr, i, j) == RmqResult{mn, a[mn]});
  REQUIRE(p.rMq(pr, i, j) == RmqResult{mx, a[mx]});
  REQUIRE(counters().element_probes - before <= 6);  // two queries, at most three reads each
}

void check_all(const Vec& a, unsigned width, uint64_t block, const Config& cfg = {}) {
  RmqIndex r(a);
  PackedRmqIndex p(pack(a, width), cfg, block);
  for (uint64_t i = 0; i < a.size(); ++i)
    for (uint64_t j = i; j < a.size(); ++j) check_pair(a, i, j, r, p);
}
}  // namespace

TEST_CASE("rmq examples") {
  RmqIndex r(Vec{3, 1, 4, 1, 5});
  CHECK(r.rmq(1, 3) == 1);
  CHECK(r.rmq(2, 2) == 2);
  CHECK(RmqIndex(Vec{2, 2, 2}).rMq(0, 2) == 0);
  CHECK_THROWS_WITH((void)r.rmq(3, 1), "invalid range");
  CHECK_THROWS_WITH((void)r.rmq(0, 5), "invalid range");

  const Vec a{5, 2, 7, 2};
  PackedRmqIndex p(pack(a, 3), {}, 2);
  CHECK(p.block_minima().to_vector() == Vec{2, 2});
  Probe pa{&a};
  CHECK(p.rmq(pa, 0, 3).pos == 1);
  const Vec nine{9};
  Probe p9{&nine};
  CHECK(PackedRmqIndex(pack(nine, 4)).rmq(p9, 0, 0).pos == 0);
  const Vec b{1, 0, 0, 1};
  Probe pb{&b};
  CHECK(PackedRmqIndex(pack(b, 1)).rMq(pb, 1, 2).pos == 1);
  const Vec c{4, 4, 1, 4};
  Probe pc{&c};
  CHECK(PackedRmqIndex(pack(c, 3), {}, 2).rmq(pc, 0, 3).pos == 2);
  const Vec d{0, 1, 2, 3};
  Probe pd{&d};
  CHECK(PackedRmqIndex(pack(d, 2), {}, 2).rMq(pd, 0, 3).pos == 3);
  CHECK_THROWS_WITH((void)p.rmq(pa, 2, 1), "invalid range");
  Config narrow;
  narrow.packed_width_max = 3;
  CHECK_THROWS_WITH(PackedRmqIndex(pack(Vec{1}, 4), narrow), "alphabet out of regime");
}

TEST_CASE("rmq exhaustive small") {
  for (unsigned len = 1; len <= 8; ++len) {
    uint64_t total = 1;
    for (unsigned i = 0; i < len; ++i) total *= 5;
    for (uint64_t code = 0; code < total; ++code) {
      Vec a(len);
      uint64_t x = code;
      for (auto& v : a) v = x % 5, x /= 5;
      RmqIndex r(a);
      const uint64_t block = 1 + code % 4;
      PackedRmqIndex p(pack(a, 3), {}, block);
      PackedRmqIndex v(pack(a, 3));
      for (uint64_t i = 0; i < len; ++i)
        for (uint64_t j = i; j < len; ++j) {
          check_pair(a, i, j, r, p);
          Probe pr{&a};
          REQUIRE(v.rmq(pr, i, j).pos == oracle::brute_rmq(a, i, j, false));
        }
    }
  }
}

TEST_CASE("rmq random") {
  std::mt19937_64 rng(17);
  for (int it = 0; it < 1000; ++it) {
    const bool big = it % 100 == 0;
    const uint64_t n = big ? 50000 + rng() % 200000 : 1 + rng() % 300;
    const unsigned w = 1 + rng() % 6;
    Vec a(n);
    const int shape = it % 4;  // random, increasing, decreasing, few values
    for (uint64_t i = 0; i < n; ++i) {
      const uint64_t r = rng() & low_mask(w);
      a[i] = shape == 0 ? r : shape == 1 ? std::min<uint64_t>(low_mask(w), i * (uint64_t{1} << w) / n)
           : shape == 2 ? low_mask(w) - std::min<uint64_t>(low_mask(w), i * (uint64_t{1} << w) / n) : r & 1;
    }
    Config cfg;
    if (it % 3 == 0) cfg.table_cap_bits = 0;
    RmqIndex r(a);
    PackedRmqIndex p(pack(a, w), cfg, it % 2 ? 0 : 1 + rng() % 8);
    const int queries = big ? 3000 : 300;
    for (int q = 0; q < queries; ++q) {
      uint64_t i = rng() % n, j = rng() % n;
      if (q % 3 == 0) j = std::min(n - 1, i + rng() % 100);
      if (i > j) std::swap(i, j);
      check_pair(a, i, j, r, p);
    }
  }
}
