#pragma once

#include <climits>
#include <cstdint>
#include <vector>

#include "orq/config.hpp"
#include "orq/partial_rank.hpp"
#include "orq/pred_succ.hpp"
#include "orq/wavelet.hpp"

namespace orq {

struct BallParams {
  static constexpr unsigned kNoCap = UINT_MAX;
  uint64_t tau = 2;
  // Levels of this color keep explicit coordinates; kNoCap keeps them only at the leaves.
  unsigned max_color = kNoCap;
  PredSuccVariant noderange = PredSuccVariant::kIndexing;
};

// Generic parameterized structure: skips of tau^c levels, coordinates only at the leaves.
BallParams ball_generic(uint64_t tau);
// Large-fanout trees. Variant a: tau = 2 and no cap. Variant b: tau = ceil(L^eps) and
// coordinates at color 1/eps - 1, so point() makes a constant number of hops.
enum class LargeFanoutVariant : uint8_t { kA, kB };
BallParams ball_large_fanout(LargeFanoutVariant v, unsigned levels, const Config& cfg);
// Small grids. Balanced: tau = 2. Constant point: the coloring of variant b.
enum class SmallGridMode : uint8_t { kBalanced, kConstantPoint };
BallParams ball_small_grid(SmallGridMode m, unsigned levels, const Config& cfg);

// point(v, i) and noderange(c, d, v) over a wavelet tree whose root lists the points
// (X[y], y) by y. A level of color c stores for each element the digits down to the
// next level divisible by tau^(c+1) (Sp), plus a partial rank index over them; the
// digit value and the partial rank name the descendant and the position there.
class BallIndex {
 public:
  BallIndex() = default;
  // The tree must still hold its value and index arrays.
  BallIndex(WaveletTree tree, const BallParams& p, const Config& cfg = {});

  [[nodiscard]] const WaveletTree& tree() const { return tree_; }
  void release_arrays() { tree_.discard_arrays(); }
  [[nodiscard]] const BallParams& params() const { return params_; }
  [[nodiscard]] unsigned color(unsigned level) const;
  [[nodiscard]] bool stores_level(unsigned level) const { return stored_[level]; }

  // Throws std::out_of_range("position out of bounds") for i >= |N(v)|.
  [[nodiscard]] Point point(NodeId v, uint64_t i) const;
  // Point at level-order position p of level l; hops, if given, receives the skips taken.
  [[nodiscard]] Point point_at(unsigned l, uint64_t p, unsigned* hops = nullptr) const;
  [[nodiscard]] uint64_t y_at(unsigned l, uint64_t p) const { return point_at(l, p).y; }
  // Same as point_at without touching the probe counter; for use inside an Accessor,
  // which counts the call itself.
  [[nodiscard]] Point point_raw(unsigned l, uint64_t p) const;

  // Positions of N(v) whose y lies in [c, d]; empty ranges have lo > hi.
  // Throws std::invalid_argument("invalid range") if c > d.
  [[nodiscard]] Range noderange(uint64_t c, uint64_t d, NodeId v) const;

  [[nodiscard]] uint64_t bits() const;

  template <class Ar>
  void serialize(Ar& ar) {
    ar(tree_, params_.tau, params_.max_color, params_.noderange, stored_, target_, sp_, pr_, xs_, ys_,
       ranges_);
  }

 private:
  [[nodiscard]] Point walk(NodeId v, uint64_t p, unsigned* hops) const;
  [[nodiscard]] Point walk_raw(NodeId v, uint64_t p, unsigned* hops) const;

  WaveletTree tree_;
  BallParams params_;
  std::vector<uint8_t> stored_;          // per level 0..L
  std::vector<unsigned> target_;         // level reached by a skip from level l
  std::vector<PackedSequence> sp_;       // skip digits
  std::vector<PartialRankIndex> pr_;
  std::vector<PackedSequence> xs_, ys_;  // explicit coordinates at stored levels
  std::vector<PredSuccIndex> ranges_;    // per level, over node * n + y
};

}  // namespace orq
