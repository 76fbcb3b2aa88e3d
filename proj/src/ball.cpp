#include "orq/ball.hpp"

#include <cmath>
#include <stdexcept>

namespace orq {

BallParams ball_generic(uint64_t tau) {
  BallParams p;
  p.tau = std::max<uint64_t>(tau, 2);
  return p;
}

namespace {

// tau = L^eps rounded up, at least 2.
uint64_t colored_tau(unsigned levels, const Config& cfg) {
  const double eps = 1.0 / cfg.resolved().inv_epsilon;
  return std::max<uint64_t>(2, static_cast<uint64_t>(std::ceil(std::pow(levels, eps) - 1e-9)));
}

}  // namespace

BallParams ball_large_fanout(LargeFanoutVariant v, unsigned levels, const Config& cfg) {
  BallParams p;
  if (v == LargeFanoutVariant::kB) {
    p.tau = colored_tau(levels, cfg);
    p.max_color = cfg.resolved().inv_epsilon - 1;
  }
  p.noderange = PredSuccVariant::kIndexing;
  return p;
}

BallParams ball_small_grid(SmallGridMode m, unsigned levels, const Config& cfg) {
  BallParams p;
  if (m == SmallGridMode::kConstantPoint) {
    p.tau = colored_tau(levels, cfg);
    p.max_color = cfg.resolved().inv_epsilon - 1;
  }
  p.noderange = PredSuccVariant::kPackedDuplicates;
  return p;
}

unsigned BallIndex::color(unsigned level) const {
  unsigned c = 0;
  if (level == 0) return 0;
  for (uint64_t pw = params_.tau; c < params_.max_color && level % pw == 0; pw *= params_.tau) {
    ++c;
    if (pw > level) break;
  }
  return c;
}

BallIndex::BallIndex(WaveletTree tree, const BallParams& p, const Config& cfg_in)
    : tree_(std::move(tree)), params_(p) {
  const Config cfg = cfg_in.resolved();
  params_.tau = std::max<uint64_t>(params_.tau, 2);
  if (!tree_.has_values() || !tree_.has_indexes()) throw std::invalid_argument("tree arrays discarded");
  const unsigned L = tree_.levels(), lgd = tree_.fanout_bits();
  const uint64_t n = tree_.size();
  stored_.assign(L + 1, 0);
  target_.assign(L + 1, L);
  sp_.resize(L + 1);
  pr_.resize(L + 1);
  xs_.resize(L + 1);
  ys_.resize(L + 1);
  ranges_.resize(L + 1);
  for (unsigned l = 0; l <= L; ++l) {
    const unsigned c = color(l);
    std::vector<uint64_t> sizes(tree_.node_count(l));
    for (uint64_t k = 0; k < sizes.size(); ++k) sizes[k] = tree_.node_size({l, k});
    count_ops(sizes.size());
    if (l == L || c >= params_.max_color) {
      stored_[l] = 1;
      ys_[l] = tree_.indexes(l);
      if (l < L) xs_[l] = tree_.values(l);
      count_ops(2 * ys_[l].words().size());
    } else {
      uint64_t step = 1;
      for (unsigned k = 0; k <= c && step <= L; ++k) step *= params_.tau;
      target_[l] = static_cast<unsigned>(std::min<uint64_t>((l / step + 1) * step, L));
      const unsigned span = lgd * (target_[l] - l);
      const unsigned shift = lgd * (L - target_[l]);
      const auto& a = tree_.values(l);
      PackedSequence sp(n, span);
      for (uint64_t j = 0; j < n; ++j) sp.set(j, (a.get(j) >> shift) & low_mask(span));
      count_ops(n);
      pr_[l] = PartialRankIndex(sp, uint64_t{1} << span, cfg, sizes);
      sp_[l] = std::move(sp);
    }
    if (l > 0) {
      // Keys node * n + y are increasing along the level.
      const auto& ys = tree_.indexes(l);
      std::vector<uint64_t> keys(n);
      uint64_t j = 0;
      for (uint64_t k = 0; k < sizes.size(); ++k)
        for (uint64_t e = j + sizes[k]; j < e; ++j) keys[j] = k * n + ys.get(j);
      count_ops(n);
      ranges_[l] = PredSuccIndex(keys, params_.noderange, cfg);
    }
  }
}

Point BallIndex::walk(NodeId v, uint64_t p, unsigned* hops) const {
  ++counters().element_probes;
  return walk_raw(v, p, hops);
}

Point BallIndex::walk_raw(NodeId v, uint64_t p, unsigned* hops) const {
  const unsigned lgd = tree_.fanout_bits();
  unsigned l = v.level;
  uint64_t idx = v.index;
  unsigned h = 0;
  while (!stored_[l]) {
    const uint64_t c = sp_[l].get(p);
    const uint64_t r = pr_[l].query_symbol(c, p, tree_.start({l, idx})) - 1;
    const unsigned t = target_[l];
    idx = (idx << (lgd * (t - l))) | c;
    l = t;
    p = tree_.start({l, idx}) + r;
    ++h;
  }
  count_ops(h + 1);
  if (hops) *hops = h;
  if (l == tree_.levels()) return {idx, ys_[l].get(p)};
  return {xs_[l].get(p), ys_[l].get(p)};
}

Point BallIndex::point(NodeId v, uint64_t i) const {
  if (i >= tree_.node_size(v)) throw std::out_of_range("position out of bounds");
  return walk(v, tree_.start(v) + i, nullptr);
}

Point BallIndex::point_at(unsigned l, uint64_t p, unsigned* hops) const {
  return walk(tree_.node_at(l, p), p, hops);
}

Point BallIndex::point_raw(unsigned l, uint64_t p) const {
  return walk_raw(tree_.node_at(l, p), p, nullptr);
}

Range BallIndex::noderange(uint64_t c, uint64_t d, NodeId v) const {
  if (c > d) throw std::invalid_argument("invalid range");
  const uint64_t n = tree_.size();
  if (c >= n) return {};
  d = std::min(d, n - 1);
  if (v.level == 0) return {static_cast<int64_t>(c), static_cast<int64_t>(d)};
  const unsigned l = v.level;
  auto key = [&](uint64_t j) { return tree_.node_at(l, j).index * n + point_raw(l, j).y; };
  const int64_t lo = ranges_[l].succ(key, v.index * n + c);
  const int64_t hi = ranges_[l].pred(key, v.index * n + d);
  if (lo == kNotFound || hi == kNotFound || lo > hi) return {};
  const auto s = static_cast<int64_t>(tree_.start(v));
  return {lo - s, hi - s};
}

uint64_t BallIndex::bits() const {
  uint64_t total = tree_.bits();
  for (const auto& s : sp_) total += s.bit_size();
  for (const auto& s : xs_) total += s.bit_size();
  for (const auto& s : ys_) total += s.bit_size();
  for (const auto& r : pr_) total += r.bits();
  for (const auto& r : ranges_) total += r.bits();
  return total;
}

}  // namespace orq
