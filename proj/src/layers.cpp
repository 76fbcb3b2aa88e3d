#include "orq/layers.hpp"

#include <algorithm>

namespace orq {

BallParams layer_ball(LayerOptions::Ball kind, unsigned levels, const Config& cfg) {
  switch (kind) {
    case LayerOptions::Ball::kLargeA: return ball_large_fanout(LargeFanoutVariant::kA, levels, cfg);
    case LayerOptions::Ball::kLargeB: return ball_large_fanout(LargeFanoutVariant::kB, levels, cfg);
    case LayerOptions::Ball::kSmallBalanced: return ball_small_grid(SmallGridMode::kBalanced, levels, cfg);
    case LayerOptions::Ball::kSmallConstant: return ball_small_grid(SmallGridMode::kConstantPoint, levels, cfg);
  }
  return ball_generic(2);
}

LayerCore::LayerCore(const PackedSequence& x, uint64_t sigma, const LayerOptions& opt, const Config& cfg) {
  const uint64_t d = uint64_t{1} << opt.fanout_bits;
  WaveletTree t = build_wavelet_packed(x, std::max<uint64_t>(sigma, 1), d, {}, cfg);
  const unsigned levels = t.levels();
  ball_ = BallIndex(std::move(t), layer_ball(opt.ball, levels, cfg), cfg);
  // The digit rank always accepts the fanout alphabet, whatever the configured limit.
  Config rc = cfg;
  rc.small_alphabet_max = std::max(cfg.resolved().small_alphabet_max, d);
  for (unsigned l = 0; l < levels; ++l) rank_.emplace_back(tree().symbols(l), d, rc);
}

LayerCore::Split LayerCore::split(uint64_t a, uint64_t b, uint64_t c, uint64_t d) const {
  Split s;
  const WaveletTree& t = tree();
  const uint64_t n = t.size(), sigma = t.sigma();
  if (n == 0 || a > b || c > d || a >= sigma || c >= n) return s;
  b = std::min(b, sigma - 1);
  d = std::min(d, n - 1);
  s.a = a;
  s.b = b;
  if (a == b) {
    s.leaf = true;
    s.level = t.levels();
    s.ca = t.leaf(a);
    s.leaf_range = ball_.noderange(c, d, s.ca);
    s.empty = s.leaf_range.empty();
    return s;
  }
  const NodeId u = t.lca_leaves(a, b);
  const Range ru = ball_.noderange(c, d, u);
  if (ru.empty()) return s;
  s.empty = false;
  s.level = u.level;
  const uint64_t st = t.start(u);
  s.lo = st + ru.lo;
  s.hi = st + ru.hi;
  s.alpha = t.digit(u.level, a);
  s.beta = t.digit(u.level, b);
  const auto& rk = rank_[u.level];
  auto child = [&](uint64_t j, uint64_t& lo, uint64_t& hi) {
    const uint64_t base = rk.rank_before(j, st);
    const uint64_t cs = t.start(t.child(u, j));
    lo = cs + rk.rank_before(j, s.lo) - base;
    hi = cs + rk.rank_before(j, s.hi + 1) - base;
  };
  s.ca = t.child(u, s.alpha);
  s.cb = t.child(u, s.beta);
  child(s.alpha, s.alo, s.ahi);
  child(s.beta, s.blo, s.bhi);
  const bool leaves = u.level + 1 == t.levels();
  s.a_all = leaves || a == t.range_lo(s.ca);
  s.b_all = leaves || b == t.range_hi(s.cb);
  return s;
}

ValueFn LayerCore::values(unsigned level) const {
  return [this, level](uint64_t p) { return ball_.point_raw(level, p).x; };
}

uint64_t LayerCore::bits() const {
  uint64_t total = ball_.bits();
  for (const auto& r : rank_) total += r.aux_bits();
  return total;
}

}  // namespace orq
