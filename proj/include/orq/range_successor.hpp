#pragma once

#include <cstdint>
#include <vector>

#include "orq/baseline.hpp"
#include "orq/layers.hpp"
#include "orq/stream.hpp"

namespace orq {

// The grids below index a sequence S: point (S[p], p) for each position p. Queries take a
// symbol range [s1, s2] and a position range [c, e].

// Narrow grid over a tiny alphabet. A binary wavelet tree splits [s1, s2] into at most
// two nodes per level ("marked" nodes); each contributes its first position in the
// range, mapped back to the root by select. Sequences shorter than tiny_narrow are
// scanned.
class SmallNarrowIndex {
 public:
  SmallNarrowIndex() = default;
  SmallNarrowIndex(const PackedSequence& s, uint64_t sigma, uint64_t samples, const Config& cfg = {});

  [[nodiscard]] uint64_t size() const { return n_; }
  [[nodiscard]] int64_t next(uint64_t s1, uint64_t s2, uint64_t c, uint64_t e) const;
  [[nodiscard]] PosStream sorted(uint64_t s1, uint64_t s2, uint64_t c, uint64_t e) const;
  [[nodiscard]] uint64_t bits() const;

  template <class Ar>
  void serialize(Ar& ar) {
    ar(n_, sigma_, tiny_, seq_, tree_, bv_);
  }

 private:
  struct Marked {
    NodeId v;
    uint64_t lo, hi;  // half-open, level positions
  };
  [[nodiscard]] std::vector<Marked> mark(uint64_t s1, uint64_t s2, uint64_t c, uint64_t e) const;
  [[nodiscard]] uint64_t up(NodeId v, uint64_t q) const;

  uint64_t n_ = 0, sigma_ = 1;
  bool tiny_ = true;
  PackedSequence seq_;  // tiny case only
  WaveletTree tree_;
  std::vector<RankSelectBitVector> bv_;
};

// Successor and sorted reporting over the points (X[y], y): a three-sided query in
// each boundary child and a Middle query over S(u) for the children between. Every
// level keeps one three-sided index over its value array and one Middle over its
// symbol array.
template <class Middle>
class SuccLayers {
 public:
  SuccLayers() = default;
  SuccLayers(const PackedSequence& x, uint64_t sigma, const LayerOptions& opt, const Config& cfg = {});

  [[nodiscard]] uint64_t size() const { return core_.tree().size(); }
  [[nodiscard]] uint64_t sigma() const { return core_.tree().sigma(); }
  [[nodiscard]] unsigned height() const { return core_.tree().levels(); }
  [[nodiscard]] const BallIndex& ball() const { return core_.ball(); }

  // Lowest point of [a, b] x [c, d]; false if the rectangle is empty.
  [[nodiscard]] bool successor(uint64_t a, uint64_t b, uint64_t c, uint64_t d, Point& out) const;
  // All points of the rectangle by increasing y; the stream borrows this index.
  [[nodiscard]] PointStream sorted(uint64_t a, uint64_t b, uint64_t c, uint64_t d) const;
  [[nodiscard]] uint64_t bits() const;

  template <class Ar>
  void serialize(Ar& ar) {
    ar(core_, side_, mid_);
  }

 private:
  LayerCore core_;
  std::vector<ThreeSidedIndex> side_;         // per level 1..L-1 (slot 0 unused)
  std::vector<Middle> mid_;                   // per level 0..L-1
};

// Medium-narrow grid: the symbols come from a fanout alphabet. Positions are cut into
// blocks; the `samples` lowest points of each (block, symbol) pair go into a baseline
// structure that answers for the fully covered blocks, and a small-fanout SuccLayers
// answers inside single blocks. In sorted mode, a block that yields `samples` sampled
// hits in a row is handed to the SuccLayers stream.
class MediumNarrowIndex {
 public:
  MediumNarrowIndex() = default;
  MediumNarrowIndex(const PackedSequence& s, uint64_t sigma, uint64_t samples, const Config& cfg = {});

  [[nodiscard]] uint64_t size() const { return grid_.size(); }
  [[nodiscard]] int64_t next(uint64_t s1, uint64_t s2, uint64_t c, uint64_t e) const;
  [[nodiscard]] PosStream sorted(uint64_t s1, uint64_t s2, uint64_t c, uint64_t e) const;
  [[nodiscard]] uint64_t bits() const;

  template <class Ar>
  void serialize(Ar& ar) {
    ar(k_, block_, grid_, sampled_);
  }

 private:
  [[nodiscard]] uint64_t block_end(uint64_t k) const { return std::min(size(), (k + 1) * block_) - 1; }
  uint64_t k_ = 1, block_ = 1;
  SuccLayers<SmallNarrowIndex> grid_;
  RangeTreeBaseline sampled_;
};

extern template class SuccLayers<SmallNarrowIndex>;
extern template class SuccLayers<MediumNarrowIndex>;

// Range successor over a rank-space permutation X (point (X[y], y) for every y).
using GeneralSuccIndex = SuccLayers<MediumNarrowIndex>;
GeneralSuccIndex build_general_succ(const std::vector<uint64_t>& x, const Config& cfg = {});

}  // namespace orq
