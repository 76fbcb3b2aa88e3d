#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "orq/baseline.hpp"
#include "orq/layers.hpp"
#include "orq/rmq.hpp"

namespace orq {

using PosSink = std::function<void(uint64_t)>;
using PointSink = std::function<void(const Point&)>;

// Reports every position of [lo, hi] that passes a one-sided x bound by recursing on
// range extrema: top(i, j) names the extremum of [i, j]; test(p) decides the bound and
// reports p when it passes. A failure ends its branch, so the recursion visits at most
// twice the output plus one positions.
template <class Top, class Test>
void three_sided_report_minmax(uint64_t lo, uint64_t hi, Top&& top, Test&& test) {
  if (lo > hi) return;
  std::vector<std::pair<uint64_t, uint64_t>> stack{{lo, hi}};
  while (!stack.empty()) {
    const auto [i, j] = stack.back();
    stack.pop_back();
    const uint64_t m = top(i, j);
    if (!test(m)) continue;
    if (m < j) stack.push_back({m + 1, j});
    if (m > i) stack.push_back({i, m - 1});
  }
}

// Empty middle for binary trees, whose split never has children between alpha and beta.
struct NoMiddle {
  NoMiddle() = default;
  NoMiddle(const PackedSequence&, uint64_t, uint64_t, const Config&) {}
  void report(uint64_t, uint64_t, uint64_t, uint64_t, const PosSink&) const {}
  [[nodiscard]] uint64_t bits() const { return 0; }
  template <class Ar>
  void serialize(Ar&) {}
};

// Orthogonal range reporting over the points (X[y], y). The boundary children are
// three-sided queries answered by min/max recursion over the level value arrays; the
// children between go to Middle over S(u).
template <class Middle>
class ReportLayers {
 public:
  ReportLayers() = default;
  // With verbatim sides the level values are kept next to their range-extremum index;
  // otherwise only the extremum index is kept and a bound is decided from the stored
  // digit, falling back to point() when the digit ties.
  ReportLayers(const PackedSequence& x, uint64_t sigma, const LayerOptions& opt, const Config& cfg = {});

  [[nodiscard]] uint64_t size() const { return core_.tree().size(); }
  [[nodiscard]] uint64_t sigma() const { return core_.tree().sigma(); }
  [[nodiscard]] unsigned height() const { return core_.tree().levels(); }
  [[nodiscard]] const BallIndex& ball() const { return core_.ball(); }

  void report(uint64_t a, uint64_t b, uint64_t c, uint64_t d, const PointSink& emit) const;
  [[nodiscard]] std::vector<Point> report(uint64_t a, uint64_t b, uint64_t c, uint64_t d) const;
  [[nodiscard]] uint64_t bits() const;

  template <class Ar>
  void serialize(Ar& ar) {
    ar(core_, verbatim_, values_, rmq_, mid_);
  }

 private:
  void side(unsigned level, uint64_t lo, uint64_t hi, uint64_t bound, bool ge, const PointSink& emit) const;

  LayerCore core_;
  bool verbatim_ = true;
  std::vector<PackedSequence> values_;  // per level, verbatim mode only
  std::vector<RmqIndex> rmq_;           // per level 1..L-1 (slot 0 unused)
  std::vector<Middle> mid_;             // per level 0..L-1
};

// Small grids: binary tree over a fanout-sized alphabet, constant-point ball.
using SmallGridReportIndex = ReportLayers<NoMiddle>;

// Narrow grid over a fanout alphabet. Positions are cut into blocks. The sampled set
// holds one point (symbol, block) per pair that occurs; for each block, P lists the
// block's local positions grouped by symbol. Fully covered blocks are answered from
// the sampled set and P, the two boundary blocks by a small grid over the whole
// sequence.
class NarrowGridReportIndex {
 public:
  NarrowGridReportIndex() = default;
  NarrowGridReportIndex(const PackedSequence& s, uint64_t sigma, uint64_t samples, const Config& cfg = {});

  [[nodiscard]] uint64_t size() const { return grid_.size(); }
  void report(uint64_t s1, uint64_t s2, uint64_t c, uint64_t e, const PosSink& emit) const;
  [[nodiscard]] uint64_t bits() const;

  template <class Ar>
  void serialize(Ar& ar) {
    ar(sigma_, block_, grid_, sampled_, plist_, poff_);
  }

 private:
  void inside(uint64_t s1, uint64_t s2, uint64_t c, uint64_t e, const PosSink& emit) const;
  uint64_t sigma_ = 1, block_ = 1;
  SmallGridReportIndex grid_;
  RangeTreeBaseline sampled_;
  PackedSequence plist_;  // local positions, by block then symbol then position
  PackedSequence poff_;   // per block, sigma + 1 offsets into that block's slice of plist_
};

extern template class ReportLayers<NoMiddle>;
extern template class ReportLayers<NarrowGridReportIndex>;

// Range reporting over a rank-space permutation X.
using GeneralReportIndex = ReportLayers<NarrowGridReportIndex>;
GeneralReportIndex build_general_report(const std::vector<uint64_t>& x, const Config& cfg = {});

}  // namespace orq
