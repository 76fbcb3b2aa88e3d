#include "orq/range_successor.hpp"

#include <algorithm>
#include <memory>

namespace orq {

namespace {

PointStream positions_to_points(PosStream s, std::function<Point(uint64_t)> f) {
  return [s = std::move(s), f = std::move(f)](Point& out) mutable {
    uint64_t p;
    if (!s(p)) return false;
    out = f(p);
    return true;
  };
}

PosStream points_to_positions(PointStream s) {
  return [s = std::move(s)](uint64_t& out) mutable {
    Point p;
    if (!s(p)) return false;
    out = p.y;
    return true;
  };
}

PosStream range_stream(uint64_t lo, uint64_t hi) {  // half-open
  return [lo, hi](uint64_t& out) mutable {
    if (lo >= hi) return false;
    out = lo++;
    return true;
  };
}

PosStream concat(std::vector<PosStream> parts) {
  return [parts = std::move(parts), i = size_t{0}](uint64_t& out) mutable {
    for (; i < parts.size(); ++i)
      if (parts[i](out)) return true;
    return false;
  };
}

}  // namespace

// ---- SmallNarrowIndex ----

SmallNarrowIndex::SmallNarrowIndex(const PackedSequence& s, uint64_t sigma, uint64_t, const Config& cfg)
    : n_(s.size()), sigma_(std::max<uint64_t>(sigma, 1)) {
  tiny_ = n_ < cfg.resolved().tiny_narrow;
  if (tiny_) {
    seq_ = s;
    return;
  }
  tree_ = build_wavelet_packed(s, sigma_, 2, {false, false}, cfg);
  for (unsigned l = 0; l < tree_.levels(); ++l) bv_.emplace_back(tree_.symbols(l));
}

std::vector<SmallNarrowIndex::Marked> SmallNarrowIndex::mark(uint64_t s1, uint64_t s2, uint64_t c,
                                                             uint64_t e) const {
  std::vector<Marked> out;
  struct Item {
    NodeId v;
    uint64_t lo, hi;
  };
  std::vector<Item> stack{{tree_.root(), c, e + 1}};
  while (!stack.empty()) {
    const Item it = stack.back();
    stack.pop_back();
    if (it.lo >= it.hi) continue;
    const uint64_t rl = tree_.range_lo(it.v), rh = tree_.range_hi(it.v);
    if (rh < s1 || rl > s2) continue;
    if (s1 <= rl && rh <= s2) {
      out.push_back({it.v, it.lo, it.hi});
      continue;
    }
    const auto& bv = bv_[it.v.level];
    const uint64_t st = tree_.start(it.v);
    const uint64_t o0 = bv.rank1_before(st), o1 = bv.rank1_before(it.lo), o2 = bv.rank1_before(it.hi);
    count_ops(3);
    const NodeId left = tree_.child(it.v, 0), right = tree_.child(it.v, 1);
    const uint64_t ls = tree_.start(left), rs = tree_.start(right);
    stack.push_back({right, rs + o1 - o0, rs + o2 - o0});
    stack.push_back({left, ls + (it.lo - st) - (o1 - o0), ls + (it.hi - st) - (o2 - o0)});
  }
  return out;
}

uint64_t SmallNarrowIndex::up(NodeId v, uint64_t q) const {
  while (v.level > 0) {
    const NodeId p = tree_.parent(v);
    const bool bit = v.index & 1;
    const auto& bv = bv_[p.level];
    const uint64_t ps = tree_.start(p);
    const uint64_t before = bit ? bv.rank1_before(ps) : bv.rank0_before(ps);
    q = static_cast<uint64_t>(bv.select(bit, before + (q - tree_.start(v)) + 1));
    count_ops(2);
    v = p;
  }
  return q;
}

int64_t SmallNarrowIndex::next(uint64_t s1, uint64_t s2, uint64_t c, uint64_t e) const {
  if (s1 > s2 || c > e || c >= n_ || s1 >= sigma_) return kNotFound;
  e = std::min(e, n_ - 1);
  if (tiny_) {
    for (uint64_t p = c; p <= e; ++p) {
      const uint64_t v = seq_.get(p);
      if (s1 <= v && v <= s2) return count_ops(p - c + 1), static_cast<int64_t>(p);
    }
    count_ops(e - c + 1);
    return kNotFound;
  }
  int64_t best = kNotFound;
  for (const Marked& m : mark(s1, s2, c, e)) {
    const auto p = static_cast<int64_t>(up(m.v, m.lo));
    if (best == kNotFound || p < best) best = p;
  }
  return best;
}

PosStream SmallNarrowIndex::sorted(uint64_t s1, uint64_t s2, uint64_t c, uint64_t e) const {
  if (s1 > s2 || c > e || c >= n_ || s1 >= sigma_) return [](uint64_t&) { return false; };
  e = std::min(e, n_ - 1);
  if (tiny_)
    return [this, s1, s2, p = c, e](uint64_t& out) mutable {
      for (; p <= e; ++p) {
        const uint64_t v = seq_.get(p);
        count_ops(1);
        if (s1 <= v && v <= s2) {
          out = p++;
          return true;
        }
      }
      return false;
    };
  std::vector<PointStream> parts;
  for (const Marked& m : mark(s1, s2, c, e))
    parts.push_back(positions_to_points(range_stream(m.lo, m.hi),
                                        [this, v = m.v](uint64_t q) { return Point{0, up(v, q)}; }));
  return points_to_positions(merge_sorted_streams(std::move(parts)));
}

uint64_t SmallNarrowIndex::bits() const {
  uint64_t b = seq_.bit_size() + tree_.bits();
  for (const auto& v : bv_) b += v.aux_bits() + v.size();
  return b;
}

// ---- SuccLayers ----

template <class Middle>
SuccLayers<Middle>::SuccLayers(const PackedSequence& x, uint64_t sigma, const LayerOptions& opt,
                               const Config& cfg)
    : core_(x, sigma, opt, cfg) {
  const WaveletTree& tree = core_.tree();
  const uint64_t d = tree.fanout();
  side_.resize(tree.levels());
  for (unsigned l = 0; l < tree.levels(); ++l) {
    mid_.emplace_back(tree.symbols(l), d, opt.samples, cfg);
    if (l > 0) side_[l] = ThreeSidedIndex(tree.values(l), opt.samples, opt.verbatim_sides, cfg);
  }
  core_.release();
}

template <class Middle>
bool SuccLayers<Middle>::successor(uint64_t a, uint64_t b, uint64_t c, uint64_t d, Point& out) const {
  const LayerCore::Split s = core_.split(a, b, c, d);
  const BallIndex& ball = core_.ball();
  if (s.empty) return false;
  if (s.leaf) {
    out = ball.point(s.ca, s.leaf_range.lo);
    return true;
  }
  bool found = false;
  auto offer = [&](unsigned level, int64_t p) {
    if (p == kNotFound) return;
    const Point q = ball.point_at(level, static_cast<uint64_t>(p));
    if (!found || q.y < out.y) out = q, found = true;
  };
  const unsigned l = s.level;
  if (s.alo < s.ahi)
    offer(l + 1, s.a_all ? static_cast<int64_t>(s.alo) : side_[l + 1].next_ge(core_.values(l + 1), s.alo, s.ahi - 1, s.a));
  if (s.blo < s.bhi)
    offer(l + 1, s.b_all ? static_cast<int64_t>(s.blo) : side_[l + 1].next_le(core_.values(l + 1), s.blo, s.bhi - 1, s.b));
  if (s.alpha + 1 < s.beta) offer(l, mid_[l].next(s.alpha + 1, s.beta - 1, s.lo, s.hi));
  return found;
}

template <class Middle>
PointStream SuccLayers<Middle>::sorted(uint64_t a, uint64_t b, uint64_t c, uint64_t d) const {
  const LayerCore::Split s = core_.split(a, b, c, d);
  if (s.empty) return empty_stream();
  if (s.leaf) {
    const NodeId v = s.ca;
    return positions_to_points(range_stream(s.leaf_range.lo, s.leaf_range.hi + 1),
                               [this, v](uint64_t i) { return core_.ball().point(v, i); });
  }
  const unsigned l = s.level;
  auto at = [this](unsigned level) {
    return std::function<Point(uint64_t)>([this, level](uint64_t p) { return core_.ball().point_at(level, p); });
  };
  std::vector<PointStream> parts;
  if (s.alo < s.ahi)
    parts.push_back(positions_to_points(
        s.a_all ? range_stream(s.alo, s.ahi) : side_[l + 1].sorted_ge(core_.values(l + 1), s.alo, s.ahi - 1, s.a),
        at(l + 1)));
  if (s.alpha + 1 < s.beta) parts.push_back(positions_to_points(mid_[l].sorted(s.alpha + 1, s.beta - 1, s.lo, s.hi), at(l)));
  if (s.blo < s.bhi)
    parts.push_back(positions_to_points(
        s.b_all ? range_stream(s.blo, s.bhi) : side_[l + 1].sorted_le(core_.values(l + 1), s.blo, s.bhi - 1, s.b),
        at(l + 1)));
  return merge_sorted_streams(std::move(parts));
}

template <class Middle>
uint64_t SuccLayers<Middle>::bits() const {
  uint64_t total = core_.bits();
  for (const auto& t : side_) total += t.bits();
  for (const auto& m : mid_) total += m.bits();
  return total;
}

template class SuccLayers<SmallNarrowIndex>;
template class SuccLayers<MediumNarrowIndex>;

// ---- MediumNarrowIndex ----

MediumNarrowIndex::MediumNarrowIndex(const PackedSequence& s, uint64_t sigma, uint64_t samples,
                                     const Config& cfg)
    : k_(std::max<uint64_t>(samples, 1)) {
  const Config rc = cfg.resolved();
  block_ = std::max<uint64_t>(rc.narrow_block, 1);
  LayerOptions opt;
  opt.fanout_bits = std::max(1u, rc.small_fanout_bits);
  opt.ball = k_ > 1 ? LayerOptions::Ball::kSmallConstant : LayerOptions::Ball::kSmallBalanced;
  opt.samples = k_;
  opt.verbatim_sides = true;
  grid_ = SuccLayers<SmallNarrowIndex>(s, sigma, opt, cfg);
  // The k_ lowest points of every (block, symbol) pair.
  std::vector<Point> pts;
  std::vector<uint64_t> seen(std::max<uint64_t>(sigma, 1), 0);
  for (uint64_t b = 0; b * block_ < s.size(); ++b) {
    std::fill(seen.begin(), seen.end(), 0);
    const uint64_t e = std::min(s.size(), (b + 1) * block_);
    for (uint64_t p = b * block_; p < e; ++p) {
      const uint64_t v = s.get(p);
      if (seen[v]++ < k_) pts.push_back({v, p});
    }
    count_ops(e - b * block_ + seen.size());
  }
  sampled_ = RangeTreeBaseline(std::move(pts));
}

int64_t MediumNarrowIndex::next(uint64_t s1, uint64_t s2, uint64_t c, uint64_t e) const {
  const uint64_t n = size();
  if (s1 > s2 || c > e || c >= n) return kNotFound;
  e = std::min(e, n - 1);
  auto inside = [&](uint64_t p, uint64_t q) {
    Point pt;
    return grid_.successor(s1, s2, p, q, pt) ? static_cast<int64_t>(pt.y) : kNotFound;
  };
  const uint64_t k1 = c / block_, k2 = e / block_;
  if (k1 == k2) return inside(c, e);
  if (int64_t r = inside(c, block_end(k1)); r != kNotFound) return r;
  if (k1 + 1 < k2) {
    Point pt;
    if (sampled_.successor(s1, s2, (k1 + 1) * block_, block_end(k2 - 1), pt)) return static_cast<int64_t>(pt.y);
  }
  return inside(k2 * block_, e);
}

PosStream MediumNarrowIndex::sorted(uint64_t s1, uint64_t s2, uint64_t c, uint64_t e) const {
  const uint64_t n = size();
  if (s1 > s2 || c > e || c >= n) return [](uint64_t&) { return false; };
  e = std::min(e, n - 1);
  const uint64_t k1 = c / block_, k2 = e / block_;
  if (k1 == k2) return points_to_positions(grid_.sorted(s1, s2, c, e));
  std::vector<PosStream> parts;
  parts.push_back(points_to_positions(grid_.sorted(s1, s2, c, block_end(k1))));
  if (k1 + 1 < k2) {
    // Sampled hits arrive block by block. Fewer than k_ hits from a block are all of
    // its points; the k_-th hit hands the block to the grid's own stream.
    struct Middle {
      const MediumNarrowIndex* m;
      uint64_t s1, s2, last;  // last fully covered block
      PointStream hits;
      Point pending;
      bool has_pending = false;
      std::vector<uint64_t> buf;
      size_t bi = 0;
      PosStream full;
    };
    auto st = std::make_shared<Middle>();
    st->m = this;
    st->s1 = s1;
    st->s2 = s2;
    st->last = k2 - 1;
    st->hits = sampled_.sorted(s1, s2, (k1 + 1) * block_, block_end(k2 - 1));
    parts.push_back([st](uint64_t& out) {
      const MediumNarrowIndex& m = *st->m;
      for (;;) {
        if (st->full) {
          if (st->full(out)) return true;
          st->full = nullptr;
        }
        if (st->bi < st->buf.size()) {
          out = st->buf[st->bi++];
          return true;
        }
        st->buf.clear();
        st->bi = 0;
        Point p;
        if (st->has_pending) p = st->pending, st->has_pending = false;
        else if (!st->hits(p)) return false;
        const uint64_t blk = p.y / m.block_;
        st->buf.push_back(p.y);
        while (st->buf.size() < m.k_) {
          Point q;
          if (!st->hits(q)) break;
          if (q.y / m.block_ != blk) {
            st->pending = q;
            st->has_pending = true;
            break;
          }
          st->buf.push_back(q.y);
        }
        if (st->buf.size() >= m.k_) {
          ++counters().escalations;
          st->buf.clear();
          st->full = points_to_positions(m.grid_.sorted(st->s1, st->s2, blk * m.block_, m.block_end(blk)));
          st->hits = blk < st->last ? m.sampled_.sorted(st->s1, st->s2, (blk + 1) * m.block_, m.block_end(st->last))
                                    : empty_stream();
          st->has_pending = false;
        }
      }
    });
  }
  parts.push_back(points_to_positions(grid_.sorted(s1, s2, k2 * block_, e)));
  return concat(std::move(parts));
}

uint64_t MediumNarrowIndex::bits() const { return grid_.bits() + sampled_.bits(); }

GeneralSuccIndex build_general_succ(const std::vector<uint64_t>& x, const Config& cfg) {
  const uint64_t n = x.size();
  LayerOptions opt;
  opt.fanout_bits = std::max(1u, cfg.resolved().large_fanout_bits);
  opt.ball = LayerOptions::Ball::kLargeA;
  opt.samples = 1;
  opt.verbatim_sides = false;
  return GeneralSuccIndex(pack(x, bits_for(n ? n - 1 : 0)), std::max<uint64_t>(n, 1), opt, cfg);
}

}  // namespace orq
