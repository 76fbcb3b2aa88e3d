#include <algorithm>
#include <random>

#include "doctest.h"
#include "orq/oracle.hpp"
#include "orq/pred_succ.hpp"

using namespace orq;

namespace {
using Vec = std::vector<uint64_t>;

constexpr PredSuccVariant kAll[] = {PredSuccVariant::kGeneral, PredSuccVariant::kPackedDistinct,
                                    PredSuccVariant::kPackedDuplicates, PredSuccVariant::kIndexing};

bool distinct(const Vec& a) { return std::adjacent_find(a.begin(), a.end()) == a.end(); }

int64_t first_occurrence(const Vec& a, int64_t j) {
  if (j == kNotFound) return j;
  while (j > 0 && a[j - 1] == a[j]) --j;
  return j;
}

void check_queries(const Vec& a, const PredSuccIndex& idx, const Vec& xs) {
  auto acc = [&](uint64_t i) { return a.at(i); };
  for (uint64_t x : xs) {
    const OpCounters before = counters();
    const int64_t p = idx.pred(acc, x);
    const int64_t s = idx.succ(acc, x);
    CHECK((counters() - before).element_probes <= 8);
    REQUIRE(p == oracle::brute_pred(a, x));
    REQUIRE(s == first_occurrence(a, oracle::brute_succ(a, x)));
  }
}

void check_all_variants(const Vec& a, const Vec& xs, const Config& cfg = {}) {
  for (auto v : kAll) {
    if (v != PredSuccVariant::kPackedDuplicates && !distinct(a)) continue;
    check_queries(a, PredSuccIndex(a, v, cfg), xs);
  }
}
}  // namespace

TEST_CASE("pred/succ examples") {
  const Vec a{3, 7, 12};
  auto acc = [&](uint64_t i) { return a[i]; };
  for (auto v : kAll) {
    PredSuccIndex idx(a, v);
    CHECK(idx.succ(acc, 7) == 1);
    CHECK(idx.pred(acc, 2) == kNotFound);
    CHECK(idx.pred(acc, 100) == 2);
    CHECK(idx.succ(acc, 8) == 2);
  }
  const Vec d{2, 2, 5};
  auto dacc = [&](uint64_t i) { return d[i]; };
  PredSuccIndex dup(d, PredSuccVariant::kPackedDuplicates);
  CHECK(dup.succ(dacc, 2) == 0);
  CHECK(dup.succ(dacc, 1) == 0);
  CHECK(dup.succ(dacc, 3) == 2);
  CHECK(dup.pred(dacc, 4) == 1);

  for (auto v : kAll) {
    PredSuccIndex empty(Vec{}, v);
    auto none = [](uint64_t) -> uint64_t { FAIL("accessor called on empty input"); return 0; };
    CHECK(empty.pred(none, 0) == kNotFound);
    CHECK(empty.succ(none, 5) == kNotFound);
  }
}

TEST_CASE("pred/succ errors") {
  for (auto v : kAll) CHECK_THROWS_WITH(PredSuccIndex(Vec{1, 3, 2}, v), "input not sorted");
  CHECK_THROWS_WITH(PredSuccIndex(Vec{1, 1}, PredSuccVariant::kGeneral), "duplicates not allowed");
  CHECK_THROWS_WITH(PredSuccIndex(Vec{1, 1}, PredSuccVariant::kPackedDistinct), "duplicates not allowed");
  CHECK_THROWS_WITH(PredSuccIndex(Vec{1, 1}, PredSuccVariant::kIndexing), "duplicates not allowed");
}

TEST_CASE("pred/succ exhaustive small") {
  // Every nondecreasing sequence of length <= 6 over [0, 8), every x in [0, 9].
  const Vec xs{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  Config tiny;
  tiny.patricia_block = 3;
  tiny.pred_block = 4;
  Vec a;
  auto rec = [&](auto&& self, uint64_t lo) -> void {
    check_all_variants(a, xs);
    check_all_variants(a, xs, tiny);
    if (a.size() == 6) return;
    for (uint64_t v = lo; v < 8; ++v) {
      a.push_back(v);
      self(self, v);
      a.pop_back();
    }
  };
  rec(rec, 0);
}

TEST_CASE("pred/succ random") {
  std::mt19937_64 rng(77);
  for (int it = 0; it < 1200; ++it) {
    const uint64_t n = it % 200 == 0 ? 100000 : rng() % 400;
    const unsigned w = 1 + rng() % 64;
    const bool dups = it % 2 == 0;
    Vec a(n);
    for (auto& v : a) v = rng() & low_mask(w);
    std::sort(a.begin(), a.end());
    if (!dups) a.erase(std::unique(a.begin(), a.end()), a.end());
    Vec xs;
    for (int q = 0; q < 50; ++q) {
      const uint64_t r = rng() & low_mask(w);
      xs.push_back(r);
      if (!a.empty()) {
        const uint64_t e = a[rng() % a.size()];
        xs.push_back(e);
        xs.push_back(e + 1);
        xs.push_back(e - 1);
      }
    }
    xs.push_back(0);
    xs.push_back(~uint64_t{0});
    Config cfg;
    cfg.patricia_block = 1 + rng() % 12;
    cfg.pred_block = 1 + rng() % 64;
    if (it % 3 == 0) cfg.table_cap_bits = 0;
    check_all_variants(a, xs, cfg);
  }
}

TEST_CASE("table and direct trie builds agree") {
  std::mt19937_64 rng(5);
  Config direct;
  direct.table_cap_bits = 0;
  direct.patricia_block = 2;
  Config table = direct;
  table.table_cap_bits = kDefaultTableCap;
  for (int it = 0; it < 200; ++it) {
    Vec a(rng() % 300);
    for (auto& v : a) v = rng() % 4096;
    std::sort(a.begin(), a.end());
    auto acc = [&](uint64_t i) { return a[i]; };
    PredSuccIndex x(a, PredSuccVariant::kPackedDuplicates, direct);
    PredSuccIndex y(a, PredSuccVariant::kPackedDuplicates, table);
    for (uint64_t q = 0; q < 4100; q += 7) {
      REQUIRE(x.pred(acc, q) == y.pred(acc, q));
      REQUIRE(x.succ(acc, q) == y.succ(acc, q));
    }
  }
}

TEST_CASE("indexing variants probe once per query") {
  std::mt19937_64 rng(9);
  Vec a(1 << 16);
  for (auto& v : a) v = rng() >> 20;
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  auto acc = [&](uint64_t i) { return a[i]; };
  for (auto v : {PredSuccVariant::kPackedDistinct, PredSuccVariant::kIndexing}) {
    PredSuccIndex idx(a, v);
    uint64_t worst = 0;
    for (int q = 0; q < 2000; ++q) {
      const OpCounters before = counters();
      (void)idx.succ(acc, rng() >> 20);
      worst = std::max(worst, (counters() - before).element_probes);
    }
    CHECK(worst <= 4);
  }
}
