// Acceptance run: one PASS/FAIL line per criterion, followed by the measurements.
// Exit status is nonzero when any criterion fails.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "engine_support.hpp"
#include "orq/index_file.hpp"
#include "orq/oracle.hpp"

using namespace orq;
using namespace orq::testing;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void verdict(int id, bool pass, const std::string& title, const std::string& detail) {
  std::printf("%s %d %s: %s\n", pass ? "PASS" : "FAIL", id, title.c_str(), detail.c_str());
  std::fflush(stdout);
  failures += !pass;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

int run_command(const std::string& cmd) {
  const int st = std::system(cmd.c_str());
  return st == -1 ? -1 : WIFEXITED(st) ? WEXITSTATUS(st) : 128;
}

// ----------------------------------------------------------------------- instances

struct Instance {
  std::vector<Point> pts;
  Config cfg;
};

// Points under one of four x regimes: permutation, clustered permutation, tiny x
// universe with repeated y values, and 40-bit coordinates.
Instance make_instance(int i, std::mt19937_64& rng) {
  const uint64_t n = i < 4 ? uint64_t(i) : i % 10 == 9 ? 4096 : rng() % 4097;
  Instance inst;
  inst.cfg = sweep_config(i, rng);
  switch (i % 4) {
    case 0:
      inst.pts = as_points(random_permutation(n, rng));
      break;
    case 1:
      inst.pts = as_points(clustered_permutation(n, rng));
      break;
    case 2: {
      const uint64_t sigma = 1 + rng() % 8;
      for (uint64_t k = 0; k < n; ++k) inst.pts.push_back({rng() % sigma, rng() % std::max<uint64_t>(1, n / 2)});
      break;
    }
    default:
      for (uint64_t k = 0; k < n; ++k) inst.pts.push_back({rng() % (uint64_t{1} << 40), rng() % (uint64_t{1} << 40)});
      break;
  }
  std::sort(inst.pts.begin(), inst.pts.end());
  inst.pts.erase(std::unique(inst.pts.begin(), inst.pts.end()), inst.pts.end());
  std::shuffle(inst.pts.begin(), inst.pts.end(), rng);
  return inst;
}

// Bounds drawn near existing coordinates so that sparse universes still hit points.
oracle::Rect make_rect(const std::vector<Point>& pts, std::mt19937_64& rng) {
  auto coord = [&](bool x) -> uint64_t {
    if (pts.empty() || rng() % 4 == 0) return rng() % 16;
    const Point& p = pts[rng() % pts.size()];
    const uint64_t v = x ? p.x : p.y;
    return rng() % 3 == 0 ? v + (rng() % 3) - 1 : v;
  };
  oracle::Rect r{coord(true), coord(true), coord(false), coord(false)};
  if (rng() % 10 != 0) {
    if (r.x1 > r.x2) std::swap(r.x1, r.x2);
    if (r.y1 > r.y2) std::swap(r.y1, r.y2);
  }
  if (rng() % 10 == 0) r = {0, ~uint64_t{0}, 0, ~uint64_t{0}};
  return r;
}

std::vector<Point> as_set(std::vector<Point> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<Point> first_k(const std::vector<Point>& v, uint64_t k) {
  return {v.begin(), v.begin() + std::min<uint64_t>(k, v.size())};
}

// ------------------------------------------------------------------------ criteria

void criterion1() {
  const char* suites[] = {"test_packed_core", "test_bitvec",   "test_seq_index",
                          "test_partial_rank", "test_rmq", "test_pred_succ"};
  const auto t0 = Clock::now();
  std::string failed;
  for (const char* s : suites)
    if (run_command(std::string(ORQ_TEST_DIR) + "/" + s + " > /dev/null 2>&1") != 0) failed += std::string(" ") + s;
  const double secs = since(t0);
  verdict(1, failed.empty() && secs < 120, "primitive oracle suites",
          fmt("6 suites in %.1f s (limit 120 s)%s%s", secs, failed.empty() ? "" : ", failed:", failed.c_str()));
}

void criterion2() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(2024);
  uint64_t instances = 0, rects = 0, mismatches = 0, max_n = 0;
  std::string first;
  auto miss = [&](const std::string& what) {
    if (!mismatches++) first = what;
  };
  for (int engine = 0; engine < 3; ++engine) {
    for (int i = 0; i < 100; ++i) {
      const Instance inst = make_instance(i, rng);
      max_n = std::max<uint64_t>(max_n, inst.pts.size());
      ++instances;
      std::function<void(const oracle::Rect&)> check;
      std::optional<ReportIndex> rep;
      std::optional<SuccessorIndex> suc;
      std::optional<SortedIndex> srt;
      if (engine == 0) rep = build_report(inst.pts, inst.cfg);
      if (engine == 1) suc = build_successor(inst.pts, inst.cfg);
      if (engine == 2) srt = build_sorted_report(inst.pts, inst.cfg);
      for (int q = 0; q < 100; ++q) {
        const auto r = make_rect(inst.pts, rng);
        ++rects;
        if (rep && as_set(rep->report(r.x1, r.x2, r.y1, r.y2)) != as_set(oracle::brute_report(inst.pts, r)))
          miss(fmt("report instance %d", i));
        if (suc && suc->successor(r.x1, r.x2, r.y1, r.y2) != oracle::brute_successor(inst.pts, r))
          miss(fmt("successor instance %d", i));
        if (srt) {
          const auto all = oracle::brute_sorted(inst.pts, r, ~uint64_t{0});
          for (uint64_t k : {uint64_t{0}, uint64_t{1}, uint64_t{2}, uint64_t(all.size())})
            if (srt->sorted(r.x1, r.x2, r.y1, r.y2, k) != first_k(all, k)) miss(fmt("sorted instance %d k=%lu", i, k));
          auto s = srt->sorted(r.x1, r.x2, r.y1, r.y2);
          if (take(s) != all) miss(fmt("sorted stream instance %d", i));
        }
      }
    }
  }
  const double secs = since(t0);
  verdict(2, mismatches == 0 && secs < 600, "engine oracle equivalence",
          fmt("%lu instances (n up to %lu, 6 configurations incl. tables off), %lu rectangles, %lu mismatches%s%s, "
              "%.1f s (limit 600 s)",
              instances, max_n, rects, mismatches, mismatches ? ", first: " : "", first.c_str(), secs));
}

void criterion3() {
  std::mt19937_64 rng(77);
  uint64_t rects = 0, first_bad = 0, set_bad = 0;
  for (int i = 0; i < 100; ++i) {
    const Instance inst = make_instance(i, rng);
    const auto rep = build_report(inst.pts, inst.cfg);
    const auto suc = build_successor(inst.pts, inst.cfg);
    const auto srt = build_sorted_report(inst.pts, inst.cfg);
    for (int q = 0; q < 100; ++q) {
      const auto r = make_rect(inst.pts, rng);
      ++rects;
      const auto sorted = srt.sorted(r.x1, r.x2, r.y1, r.y2, ~uint64_t{0});
      const auto head = sorted.empty() ? std::nullopt : std::optional<Point>(sorted.front());
      first_bad += head != suc.successor(r.x1, r.x2, r.y1, r.y2);
      set_bad += as_set(sorted) != as_set(rep.report(r.x1, r.x2, r.y1, r.y2));
    }
  }
  verdict(3, first_bad == 0 && set_bad == 0, "cross-engine consistency",
          fmt("%lu rectangles on 100 shared instances: %lu first-vs-successor and %lu set mismatches", rects,
              first_bad, set_bad));
}

void criterion4() {
  const auto t0 = Clock::now();
  bool pass = true;
  std::string detail;
  const char* names[] = {"report", "succ", "sorted"};
  for (int e = 0; e < 3; ++e) {
    double lo = 1e300, hi = 0;
    detail += std::string(e ? "; " : "") + names[e] + ":";
    for (unsigned lg : {16u, 18u, 20u, 22u}) {
      std::mt19937_64 rng(lg);
      const auto pts = as_points(random_permutation(uint64_t{1} << lg, rng));
      const OpCounters before = counters();
      if (e == 0) (void)build_report(pts);
      if (e == 1) (void)build_successor(pts);
      if (e == 2) (void)build_sorted_report(pts);
      const double n = double(pts.size());
      const double v = double((counters() - before).word_ops) / (n * std::sqrt(double(lg)));
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      detail += fmt(" %.1f", v);
    }
    detail += fmt(" (ratio %.2f)", hi / lo);
    pass = pass && hi / lo < 2.5;
  }
  const double secs = since(t0);
  verdict(4, pass && secs < 900, "construction scaling",
          "word_ops/(n sqrt lg n) at n=2^16,2^18,2^20,2^22 " + detail + fmt(", %.0f s (limit 900 s)", secs));
}

// Log-uniform side lengths, as in the bench command.
std::vector<oracle::Rect> scaling_rects(uint64_t n, int count, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0, 1);
  auto side = [&] {
    const auto len = static_cast<uint64_t>(std::exp2(unit(rng) * std::log2(double(n))));
    const uint64_t lo = rng() % n;
    return std::pair(lo, std::min(lo + len, n - 1));
  };
  std::vector<oracle::Rect> rs(count);
  for (auto& r : rs) {
    std::tie(r.x1, r.x2) = side();
    std::tie(r.y1, r.y2) = side();
  }
  return rs;
}

void criterion5() {
  double mean[2] = {0, 0};
  const unsigned lgs[2] = {10, 20};
  for (int k = 0; k < 2; ++k) {
    std::mt19937_64 rng(lgs[k]);
    const uint64_t n = uint64_t{1} << lgs[k];
    const auto idx = build_successor(as_points(random_permutation(n, rng)));
    const auto rs = scaling_rects(n, 2000, 5);
    const OpCounters before = counters();
    for (const auto& r : rs) (void)idx.successor(r.x1, r.x2, r.y1, r.y2);
    mean[k] = double((counters() - before).element_probes) / double(rs.size());
  }
  const double ratio = mean[1] / mean[0];

  uint64_t queries = 0, over = 0, worst = 0;
  double worst_ratio = 0;
  std::string sizes;
  for (unsigned lg : {10u, 16u, 20u}) {
    std::mt19937_64 rng(lg + 100);
    const uint64_t n = uint64_t{1} << lg;
    const auto idx = build_report(as_points(random_permutation(n, rng)));
    const uint64_t h = idx.engine().height();
    sizes += fmt("%s2^%u (height %lu)", sizes.empty() ? "" : ", ", lg, h);
    for (const auto& r : scaling_rects(n, 300, 6)) {
      const OpCounters before = counters();
      const uint64_t occ = idx.report(r.x1, r.x2, r.y1, r.y2).size();
      const uint64_t probes = (counters() - before).element_probes;
      ++queries;
      const uint64_t limit = occ + 8 * h;
      if (probes > limit) {
        ++over;
        worst = std::max(worst, probes - limit);
        worst_ratio = std::max(worst_ratio, double(probes) / double(limit));
      }
    }
  }
  const bool pass_a = ratio <= 2.0, pass_b = over == 0;
  verdict(5, pass_a && pass_b, "query probe bounds",
          fmt("(a) %s: mean successor probes %.2f at 2^10, %.2f at 2^20, ratio %.2f (limit 2); ", pass_a ? "ok" : "over",
              mean[0], mean[1], ratio) +
              fmt("(b) %s: %lu of %lu report queries over occ + 8*height on ", pass_b ? "ok" : "over", over, queries) +
              sizes + fmt(", worst excess %lu probes, worst probes/limit %.2f", worst, worst_ratio));
}

void criterion6() {
  std::mt19937_64 rng(66);
  std::vector<Point> pts;
  for (int i = 0; i < 4000; ++i) pts.push_back({rng() % 5000, rng() % (uint64_t{1} << 35)});
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const std::vector<AnyIndex> built = {build_report(pts), build_successor(pts), build_sorted_report(pts)};
  uint64_t queries = 0, differ = 0, rejected = 0, corrupted = 0;
  for (const auto& idx : built) {
    std::ostringstream out(std::ios::binary);
    save_index(out, idx);
    const std::string bytes = out.str();
    std::istringstream in(bytes, std::ios::binary);
    const AnyIndex back = load_index(in);
    for (int q = 0; q < 100; ++q) {
      const auto r = make_rect(pts, rng);
      ++queries;
      if (const auto* a = std::get_if<ReportIndex>(&idx))
        differ += as_set(a->report(r.x1, r.x2, r.y1, r.y2)) !=
                  as_set(std::get<ReportIndex>(back).report(r.x1, r.x2, r.y1, r.y2));
      if (const auto* a = std::get_if<SuccessorIndex>(&idx))
        differ += a->successor(r.x1, r.x2, r.y1, r.y2) != std::get<SuccessorIndex>(back).successor(r.x1, r.x2, r.y1, r.y2);
      if (const auto* a = std::get_if<SortedIndex>(&idx))
        differ += a->sorted(r.x1, r.x2, r.y1, r.y2, ~uint64_t{0}) !=
                  std::get<SortedIndex>(back).sorted(r.x1, r.x2, r.y1, r.y2, ~uint64_t{0});
    }
    // Flip one byte near the middle of the file, inside some section payload.
    for (size_t pos : {bytes.size() / 2, bytes.size() - 1}) {
      std::string bad = bytes;
      bad[pos] ^= 0x10;
      ++corrupted;
      std::istringstream bin(bad, std::ios::binary);
      try {
        (void)load_index(bin);
      } catch (const IndexFormatError& e) {
        rejected += std::string(e.what()).find("checksum") != std::string::npos;
      }
    }
  }
  verdict(6, differ == 0 && rejected == corrupted, "serialization",
          fmt("3 index types, %lu queries after reload, %lu differ; %lu of %lu corrupted files rejected by checksum",
              queries, differ, rejected, corrupted));
}

void criterion7() {
  const int code = run_command(std::string(ORQ_CLI) + " verify --n 1024 --cases 50 > /dev/null");
  verdict(7, code == 0, "cli verify", fmt("orq verify --n 1024 --cases 50 exited with %d", code));
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  std::printf("%d of 7 criteria failed\n", failures);
  return failures ? 1 : 0;
}
