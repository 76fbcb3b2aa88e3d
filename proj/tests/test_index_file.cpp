#include <algorithm>
#include <cstring>
#include <random>
#include <sstream>

#include "doctest.h"
#include "orq/index_file.hpp"

using namespace orq;

namespace {

std::vector<Point> random_points(uint64_t n, std::mt19937_64& rng) {
  std::vector<Point> pts;
  for (uint64_t i = 0; i < n; ++i) pts.push_back({rng() % 1000, i * 3 + rng() % 3});
  return pts;
}

std::string store(const AnyIndex& idx) {
  std::ostringstream out(std::ios::binary);
  save_index(out, idx);
  return out.str();
}

AnyIndex reload(const std::string& bytes) {
  std::istringstream in(bytes, std::ios::binary);
  return load_index(in);
}

// Offset of the first payload byte of the section with the given tag.
size_t payload_offset(const std::string& bytes, SectionTag tag) {
  size_t pos = 9;
  for (;;) {
    uint32_t t = 0;
    uint64_t len = 0;
    std::memcpy(&t, bytes.data() + pos, 4);
    std::memcpy(&len, bytes.data() + pos + 4, 8);
    if (t == static_cast<uint32_t>(tag)) return pos + 16;
    pos += 16 + len;
  }
}

}  // namespace

TEST_CASE("round trip preserves answers") {
  std::mt19937_64 rng(5);
  const auto pts = random_points(700, rng);
  Config cfg;
  cfg.lg_cap = 12;
  const auto rep = build_report(pts, cfg);
  const auto suc = build_successor(pts, cfg);
  const auto srt = build_sorted_report(pts, cfg);
  const auto rep2 = std::get<ReportIndex>(reload(store(rep)));
  const auto suc2 = std::get<SuccessorIndex>(reload(store(suc)));
  const auto srt2 = std::get<SortedIndex>(reload(store(srt)));
  CHECK(rep2.config() == cfg);
  CHECK(rep2.map() == rep.map());
  for (int q = 0; q < 100; ++q) {
    uint64_t x1 = rng() % 1000, x2 = rng() % 1000, y1 = rng() % 2100, y2 = rng() % 2100;
    if (x1 > x2) std::swap(x1, x2);
    if (y1 > y2) std::swap(y1, y2);
    auto a = rep.report(x1, x2, y1, y2), b = rep2.report(x1, x2, y1, y2);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    CHECK(a == b);
    CHECK(suc.successor(x1, x2, y1, y2) == suc2.successor(x1, x2, y1, y2));
    CHECK(srt.sorted(x1, x2, y1, y2, 50) == srt2.sorted(x1, x2, y1, y2, 50));
  }
  CHECK(store(rep2) == store(rep));
}

TEST_CASE("empty index round trip") {
  auto idx = std::get<SuccessorIndex>(reload(store(build_successor({}))));
  CHECK(idx.size() == 0);
  CHECK_FALSE(idx.successor(0, 10, 0, 10).has_value());
}

TEST_CASE("corruption is rejected") {
  std::mt19937_64 rng(6);
  const std::string good = store(build_report(random_points(50, rng)));
  for (auto tag : {SectionTag::kConfig, SectionTag::kRankMap, SectionTag::kEngine}) {
    std::string bad = good;
    bad[payload_offset(bad, tag)] ^= 0x40;
    CHECK_THROWS_WITH_AS(reload(bad), doctest::Contains("checksum mismatch"), IndexFormatError);
  }
  std::string sum = good;
  sum[payload_offset(sum, SectionTag::kEngine) - 1] ^= 1;  // the stored checksum itself
  CHECK_THROWS_AS(reload(sum), IndexFormatError);
  std::string magic = good;
  magic[0] = 'X';
  CHECK_THROWS_WITH_AS(reload(magic), "not an index file", IndexFormatError);
  std::string version = good;
  version[4] = 9;
  CHECK_THROWS_WITH_AS(reload(version), "unsupported version 9", IndexFormatError);
  CHECK_THROWS_AS(reload(good.substr(0, good.size() - 3)), IndexFormatError);
  CHECK_THROWS_AS(reload(good.substr(0, 9)), IndexFormatError);
}

TEST_CASE("unknown sections are skipped") {
  std::mt19937_64 rng(8);
  const auto pts = random_points(40, rng);
  const std::string good = store(build_sorted_report(pts));
  std::string extra = good.substr(0, 9);
  const char section[] = {99, 0, 0, 0, 3, 0, 0, 0, 0, 0, 0, 0, 1, 2, 3, 4, 'a', 'b', 'c'};
  extra.append(section, sizeof(section));
  extra += good.substr(9);
  auto idx = std::get<SortedIndex>(reload(extra));
  CHECK(idx.sorted(0, 1000, 0, 1000, 3).size() == 3);
}
