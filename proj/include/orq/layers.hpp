#pragma once

#include <cstdint>
#include <vector>

#include "orq/ball.hpp"
#include "orq/seq_index.hpp"
#include "orq/three_sided.hpp"

namespace orq {

struct LayerOptions {
  enum class Ball : uint8_t { kLargeA, kLargeB, kSmallBalanced, kSmallConstant };
  unsigned fanout_bits = 1;
  Ball ball = Ball::kLargeA;
  uint64_t samples = 1;        // per-block samples of the three-sided indexes
  bool verbatim_sides = true;  // narrow values: side structures keep them verbatim
};

BallParams layer_ball(LayerOptions::Ball kind, unsigned levels, const Config& cfg);

// Wavelet tree over the points (X[y], y) with ball inheritance and per-level digit
// rank. A query rectangle splits at the lowest common ancestor u of its x bounds into
// the boundary children alpha and beta and the children strictly between them. Every
// per-node structure of the engines is stored once per level over the level order,
// so a node is a contiguous stretch of it.
class LayerCore {
 public:
  LayerCore() = default;
  // Keeps the tree arrays until release() so callers can build their level structures.
  LayerCore(const PackedSequence& x, uint64_t sigma, const LayerOptions& opt, const Config& cfg);
  void release() { ball_.release_arrays(); }

  [[nodiscard]] const BallIndex& ball() const { return ball_; }
  [[nodiscard]] const WaveletTree& tree() const { return ball_.tree(); }

  struct Split {
    bool empty = true;
    bool leaf = false;         // a == b: every point of the leaf's range qualifies
    uint64_t a = 0, b = 0;     // x bounds after clamping
    Range leaf_range;          // leaf case: node positions
    unsigned level = 0;        // of u
    uint64_t lo = 0, hi = 0;   // level positions of u's part, inclusive
    uint64_t alpha = 0, beta = 0;
    NodeId ca, cb;
    uint64_t alo = 0, ahi = 0, blo = 0, bhi = 0;  // child level positions, half-open
    bool a_all = false, b_all = false;            // the x bound cuts nothing off
  };
  // Bounds beyond the grid are clamped; inverted ranges give an empty split.
  [[nodiscard]] Split split(uint64_t a, uint64_t b, uint64_t c, uint64_t d) const;
  // x of the point at a level position, for accessors (uncounted; the Accessor counts).
  [[nodiscard]] ValueFn values(unsigned level) const;
  [[nodiscard]] uint64_t bits() const;

  template <class Ar>
  void serialize(Ar& ar) {
    ar(ball_, rank_);
  }

 private:
  BallIndex ball_;
  std::vector<SmallAlphabetRankIndex> rank_;  // per level 0..L-1, over S_l
};

}  // namespace orq
