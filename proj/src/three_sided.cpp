#include "orq/three_sided.hpp"

#include <algorithm>
#include <memory>
#include <numeric>

namespace orq {

ThreeSidedIndex::ThreeSidedIndex(const PackedSequence& v, uint64_t samples, bool verbatim, const Config& cfg)
    : n_(v.size()), k_(std::max<uint64_t>(samples, 1)), verbatim_(verbatim) {
  const Config rc = cfg.resolved();
  block_ = verbatim_ ? std::max<uint64_t>(n_, 1) : std::max<uint64_t>(rc.three_sided_block, 2);
  sub_ = std::max<uint64_t>(rc.three_sided_subblock, 1);
  per_block_ = (block_ + sub_ - 1) / sub_;
  const uint64_t blocks = (n_ + block_ - 1) / block_;
  const uint64_t ids = n_ == 0 ? 0 : sub_id(n_ - 1) + 1;
  std::vector<uint32_t> smax(ids, 0), smin(ids, UINT32_MAX);

  if (verbatim_) {
    if (v.width() > 32) throw std::invalid_argument("alphabet out of regime");
    ranks_ = v;
  } else {
    const unsigned w = bits_for(block_ - 1);
    ranks_ = PackedSequence(n_, w);
    perm_ = PackedSequence(n_, w);
    ps_.reserve(blocks);
    std::vector<uint64_t> order, sorted;
    for (uint64_t b = 0; b < blocks; ++b) {
      const uint64_t s = b * block_, len = block_end(b) - s + 1;
      order.resize(len);
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(),
                       [&](uint64_t i, uint64_t j) { return v.get(s + i) < v.get(s + j); });
      count_ops(len * std::bit_width(len));
      sorted.resize(len);
      for (uint64_t r = 0; r < len; ++r) {
        perm_.set(s + r, order[r]);
        ranks_.set(s + order[r], r);
        sorted[r] = v.get(s + order[r]);
      }
      ps_.emplace_back(sorted, PredSuccVariant::kIndexing, cfg);
      // Samples: the k largest and k smallest, listed by position.
      const uint64_t take = std::min(k_, len);
      std::vector<uint64_t> hi(order.end() - take, order.end()), lo(order.begin(), order.begin() + take);
      std::sort(hi.begin(), hi.end());
      std::sort(lo.begin(), lo.end());
      for (uint64_t i : hi) hi_pos_.push_back(s + i), hi_val_.push_back(v.get(s + i));
      for (uint64_t i : lo) lo_pos_.push_back(s + i), lo_val_.push_back(v.get(s + i));
    }
    hi_tree_ = ExtremumTree<uint64_t>(hi_val_, true);
    lo_tree_ = ExtremumTree<uint64_t>(lo_val_, false);
  }
  for (uint64_t p = 0; p < n_; ++p) {
    const auto r = static_cast<uint32_t>(ranks_.get(p));
    const uint64_t id = sub_id(p);
    smax[id] = std::max(smax[id], r);
    smin[id] = std::min(smin[id], r);
  }
  count_ops(n_);
  smax_ = ExtremumTree<uint32_t>(smax, true);
  smin_ = ExtremumTree<uint32_t>(smin, false);
}

ThreeSidedIndex::Threshold ThreeSidedIndex::threshold(const ValueFn& value, uint64_t blk, uint64_t x,
                                                      bool ge) const {
  if (verbatim_) {
    if (x > UINT32_MAX) return {!ge, UINT32_MAX};
    return {true, x};
  }
  const uint64_t s = blk * block_;
  auto key = [&](uint64_t i) { return value(s + perm_.get(s + i)); };
  const int64_t idx = ge ? ps_[blk].succ(key, x) : ps_[blk].pred(key, x);
  if (idx == kNotFound || idx < 0) return {};
  return {true, static_cast<uint64_t>(idx)};
}

int64_t ThreeSidedIndex::scan(uint64_t p, uint64_t q, uint64_t r, bool ge) const {
  auto pass = [&](uint64_t i) {
    const uint64_t v = ranks_.get(i);
    return ge ? v >= r : v <= r;
  };
  const uint64_t id = sub_id(p);
  const uint64_t stop = std::min(q, sub_start(id) + sub_ - 1);
  for (uint64_t i = p; i <= stop; ++i)
    if (pass(i)) return count_ops(i - p + 1), static_cast<int64_t>(i);
  count_ops(stop - p + 1);
  if (stop == q) return kNotFound;
  const auto t = static_cast<uint32_t>(std::min<uint64_t>(r, UINT32_MAX));
  const int64_t j = ge ? smax_.first(id + 1, t) : smin_.first(id + 1, t);
  if (j == kNotFound) return kNotFound;
  const uint64_t a = sub_start(static_cast<uint64_t>(j));
  if (a > q) return kNotFound;
  for (uint64_t i = a; i <= q; ++i)
    if (pass(i)) return count_ops(i - a + 1), static_cast<int64_t>(i);
  return kNotFound;
}

int64_t ThreeSidedIndex::in_block(const ValueFn& value, uint64_t blk, uint64_t p, uint64_t q, uint64_t x,
                                  bool ge) const {
  const Threshold t = threshold(value, blk, x, ge);
  return t.any ? scan(p, q, t.r, ge) : kNotFound;
}

int64_t ThreeSidedIndex::next(const ValueFn& value, uint64_t s, uint64_t e, uint64_t x, bool ge) const {
  if (s > e || s >= n_) return kNotFound;
  e = std::min(e, n_ - 1);
  const uint64_t bs = s / block_, be = e / block_;
  if (bs == be) return in_block(value, bs, s, e, x, ge);
  if (int64_t r = in_block(value, bs, s, block_end(bs), x, ge); r != kNotFound) return r;
  if (bs + 1 < be) {
    const auto& pos = ge ? hi_pos_ : lo_pos_;
    const uint64_t i = std::lower_bound(pos.begin(), pos.end(), (bs + 1) * block_) - pos.begin();
    count_ops(std::bit_width(pos.size()));
    const int64_t j = ge ? hi_tree_.first(i, x) : lo_tree_.first(i, x);
    if (j != kNotFound && pos[j] < be * block_) {
      const uint64_t k = pos[j] / block_;
      return in_block(value, k, k * block_, block_end(k), x, ge);
    }
  }
  return in_block(value, be, be * block_, e, x, ge);
}

int64_t ThreeSidedIndex::next_ge(const ValueFn& value, uint64_t s, uint64_t e, uint64_t a) const {
  return next(value, s, e, a, true);
}

int64_t ThreeSidedIndex::next_le(const ValueFn& value, uint64_t s, uint64_t e, uint64_t b) const {
  return next(value, s, e, b, false);
}

PosStream ThreeSidedIndex::block_stream(const ValueFn& value, uint64_t blk, uint64_t p, uint64_t q,
                                        uint64_t x, bool ge) const {
  const Threshold t = threshold(value, blk, x, ge);
  if (!t.any) return [](uint64_t&) { return false; };
  return [this, cur = p, q, r = t.r, ge](uint64_t& out) mutable {
    if (cur > q) return false;
    const int64_t i = scan(cur, q, r, ge);
    if (i == kNotFound) {
      cur = q + 1;
      return false;
    }
    out = static_cast<uint64_t>(i);
    cur = out + 1;
    return true;
  };
}

namespace {
// Streams one part after another.
PosStream concat(std::vector<PosStream> parts) {
  return [parts = std::move(parts), i = size_t{0}](uint64_t& out) mutable {
    for (; i < parts.size(); ++i)
      if (parts[i](out)) return true;
    return false;
  };
}
}  // namespace

PosStream ThreeSidedIndex::sorted(ValueFn value, uint64_t s, uint64_t e, uint64_t x, bool ge) const {
  if (s > e || s >= n_) return [](uint64_t&) { return false; };
  e = std::min(e, n_ - 1);
  const uint64_t bs = s / block_, be = e / block_;
  if (bs == be) return block_stream(value, bs, s, e, x, ge);
  std::vector<PosStream> parts;
  parts.push_back(block_stream(value, bs, s, block_end(bs), x, ge));
  if (bs + 1 < be) {
    // Samples hit in position order. Hits are buffered per block: fewer than k hits
    // mean the block holds nothing else, k hits hand the block to its full stream.
    struct Middle {
      const ThreeSidedIndex* t;
      ValueFn value;
      uint64_t x, end, j;
      bool ge;
      std::vector<uint64_t> buf;
      size_t bi = 0;
      PosStream full;
    };
    auto m = std::make_shared<Middle>();
    const auto& pos = ge ? hi_pos_ : lo_pos_;
    m->t = this;
    m->value = value;
    m->x = x;
    m->end = be * block_;
    m->ge = ge;
    m->j = std::lower_bound(pos.begin(), pos.end(), (bs + 1) * block_) - pos.begin();
    count_ops(std::bit_width(pos.size()));
    parts.push_back([m](uint64_t& out) {
      const ThreeSidedIndex& t = *m->t;
      const auto& pos = m->ge ? t.hi_pos_ : t.lo_pos_;
      for (;;) {
        if (m->full) {
          if (m->full(out)) return true;
          m->full = nullptr;
        }
        if (m->bi < m->buf.size()) {
          out = m->buf[m->bi++];
          return true;
        }
        m->buf.clear();
        m->bi = 0;
        const int64_t j = m->ge ? t.hi_tree_.first(m->j, m->x) : t.lo_tree_.first(m->j, m->x);
        if (j == kNotFound || pos[j] >= m->end) {
          m->j = pos.size();
          return false;
        }
        const uint64_t blk = pos[j] / t.block_, stop = (blk + 1) * t.block_;
        uint64_t i = static_cast<uint64_t>(j);
        while (i < pos.size() && pos[i] < stop) {
          const uint64_t v = m->ge ? t.hi_val_[i] : t.lo_val_[i];
          if (m->ge ? v >= m->x : v <= m->x) m->buf.push_back(pos[i]);
          ++i;
        }
        count_ops(i - j);
        m->j = i;
        if (m->buf.size() >= t.k_) {
          ++counters().escalations;
          m->buf.clear();
          m->full = t.block_stream(m->value, blk, blk * t.block_, t.block_end(blk), m->x, m->ge);
        }
      }
    });
  }
  parts.push_back(block_stream(value, be, be * block_, e, x, ge));
  return concat(std::move(parts));
}

PosStream ThreeSidedIndex::sorted_ge(ValueFn value, uint64_t s, uint64_t e, uint64_t a) const {
  return sorted(std::move(value), s, e, a, true);
}

PosStream ThreeSidedIndex::sorted_le(ValueFn value, uint64_t s, uint64_t e, uint64_t b) const {
  return sorted(std::move(value), s, e, b, false);
}

uint64_t ThreeSidedIndex::bits() const {
  return ranks_.bit_size() + perm_.bit_size() + smax_.bits() + smin_.bits() + hi_tree_.bits() +
         lo_tree_.bits() + 128 * (hi_pos_.size() + lo_pos_.size());
}

}  // namespace orq
