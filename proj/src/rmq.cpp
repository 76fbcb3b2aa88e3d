#include "orq/rmq.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace orq {

namespace {

constexpr uint64_t kSuperWords = 32;

// Per byte (bits read LSB first, '(' = +1): net excess, minimum prefix excess over
// prefixes of length 1..8, and the last prefix end attaining it.
struct ByteTables {
  std::array<int8_t, 256> total{}, min{};
  std::array<uint8_t, 256> arg{};
  ByteTables() {
    for (unsigned b = 0; b < 256; ++b) {
      int e = 0, m = 100, at = 0;
      for (unsigned i = 0; i < 8; ++i) {
        e += (b >> i & 1) ? 1 : -1;
        if (e <= m) m = e, at = static_cast<int>(i);
      }
      total[b] = static_cast<int8_t>(e);
      min[b] = static_cast<int8_t>(m);
      arg[b] = static_cast<uint8_t>(at);
    }
  }
};

const ByteTables& bytes() {
  static const ByteTables t;
  return t;
}

struct Best {
  int64_t value = INT64_MAX;
  uint64_t pos = 0;
  void offer(int64_t v, uint64_t p) {  // ties move right
    if (v <= value) value = v, pos = p;
  }
};

// Scans positions [p, q] of one word; e is the excess before p. Returns excess after q.
int64_t scan_word(uint64_t word, uint64_t base, unsigned p, unsigned q, int64_t e, Best& best) {
  const auto& t = bytes();
  unsigned i = p;
  while (i <= q) {
    if ((i & 7) == 0 && i + 7 <= q) {
      const unsigned b = (word >> i) & 0xff;
      best.offer(e + t.min[b], base + i + t.arg[b]);
      e += t.total[b];
      i += 8;
    } else {
      e += (word >> i & 1) ? 1 : -1;
      best.offer(e, base + i);
      ++i;
    }
  }
  return e;
}

}  // namespace

int64_t RmqIndex::Stack::excess_before_word(uint64_t w) const {
  const int64_t p = static_cast<int64_t>(w * 64);
  return 2 * static_cast<int64_t>(bp.rank1_before(w * 64)) - p;
}

void RmqIndex::Stack::build(std::span<const uint64_t> a, bool max) {
  BitVectorBuilder out;
  std::vector<uint64_t> st;
  for (uint64_t v : a) {
    while (!st.empty() && (max ? st.back() < v : st.back() > v)) {
      st.pop_back();
      out.push(false);
    }
    out.push(true);
    st.push_back(v);
  }
  out.push_run(false, st.size());
  bp = out.build();
  count_ops(2 * a.size());

  const auto& words = bp.bits().words();
  const uint64_t len = bp.size();
  word_min.assign(words.size(), 0);
  std::vector<int64_t> wmin_abs(words.size());
  int64_t e = 0;
  for (uint64_t w = 0; w < words.size(); ++w) {
    Best b;
    const unsigned last = static_cast<unsigned>(std::min<uint64_t>(63, len - 1 - w * 64));
    const int64_t after = scan_word(words[w], w * 64, 0, last, e, b);
    word_min[w] = static_cast<int8_t>(b.value - e);
    wmin_abs[w] = b.value;
    e = after;
  }
  count_ops(words.size());

  nsb = (words.size() + kSuperWords - 1) / kSuperWords;
  unsigned levels = 1;
  while ((uint64_t{1} << levels) <= nsb) ++levels;
  sb_min.assign(levels * nsb, INT64_MAX);
  sb_arg.assign(levels * nsb, 0);
  for (uint64_t s = 0; s < nsb; ++s) {
    int64_t m = INT64_MAX;
    for (uint64_t w = s * kSuperWords; w < std::min<uint64_t>(words.size(), (s + 1) * kSuperWords); ++w)
      m = std::min(m, wmin_abs[w]);
    sb_min[s] = m;
    sb_arg[s] = static_cast<uint32_t>(s);
  }
  for (unsigned l = 1; l < levels; ++l)
    for (uint64_t s = 0; s + (uint64_t{1} << l) <= nsb; ++s) {
      const uint64_t r = s + (uint64_t{1} << (l - 1));
      const uint64_t a0 = (l - 1) * nsb + s, a1 = (l - 1) * nsb + r;
      const bool right = sb_min[a1] <= sb_min[a0];
      sb_min[l * nsb + s] = right ? sb_min[a1] : sb_min[a0];
      sb_arg[l * nsb + s] = right ? sb_arg[a1] : sb_arg[a0];
    }
  count_ops(nsb * levels);
}

uint64_t RmqIndex::Stack::query(uint64_t i, uint64_t j) const {
  if (i == j) return i;
  const uint64_t x = static_cast<uint64_t>(bp.select1(i + 1));
  const uint64_t y = static_cast<uint64_t>(bp.select1(j + 1));
  const auto& words = bp.bits().words();
  const int64_t ex = 2 * static_cast<int64_t>(bp.rank1_before(x + 1)) - static_cast<int64_t>(x + 1);
  const uint64_t wx = x / 64, wy = y / 64;
  Best best;
  const int64_t before_x = ex - 1;  // position x holds '('
  if (wx == wy) {
    scan_word(words[wx], wx * 64, x & 63, y & 63, before_x, best);
  } else {
    scan_word(words[wx], wx * 64, x & 63, 63, before_x, best);
    // Whole words strictly between: remember the rightmost word attaining the minimum.
    Best wbest;
    uint64_t w = wx + 1;
    auto take_words = [&](uint64_t end) {  // words [w, end)
      int64_t base = excess_before_word(w);
      for (; w < end; ++w) {
        wbest.offer(base + word_min[w], w);
        base += 2 * std::popcount(words[w]) - 64;
      }
    };
    if (wy - w <= 2 * kSuperWords) {
      take_words(wy);
    } else {
      const uint64_t s0 = (w + kSuperWords - 1) / kSuperWords, s1 = wy / kSuperWords;  // full [s0, s1)
      take_words(s0 * kSuperWords);
      if (s0 < s1) {
        const unsigned l = std::bit_width(s1 - s0) - 1;
        const uint64_t a0 = l * nsb + s0, a1 = l * nsb + s1 - (uint64_t{1} << l);
        const bool right = sb_min[a1] <= sb_min[a0];
        const int64_t m = right ? sb_min[a1] : sb_min[a0];
        const uint64_t sb = right ? sb_arg[a1] : sb_arg[a0];
        if (m <= wbest.value) {
          // Rightmost word of that superblock at the minimum.
          for (uint64_t v = std::min<uint64_t>((sb + 1) * kSuperWords, words.size()); v-- > sb * kSuperWords;)
            if (excess_before_word(v) + word_min[v] == m) {
              wbest.offer(m, v);
              break;
            }
        }
        count_ops(1);
      }
      w = s1 * kSuperWords;
      take_words(wy);
    }
    if (wbest.value != INT64_MAX && wbest.value <= best.value) {
      Best inner;
      scan_word(words[wbest.pos], wbest.pos * 64, 0, 63, excess_before_word(wbest.pos), inner);
      best = inner;
    }
    scan_word(words[wy], wy * 64, 0, y & 63, excess_before_word(wy), best);
  }
  count_ops(1);
  if (best.value >= ex) return i;
  return bp.rank1_before(best.pos + 2) - 1;
}

RmqIndex::RmqIndex(std::span<const uint64_t> a, bool with_min, bool with_max) : n_(a.size()) {
  if (with_min) min_.build(a, false);
  if (with_max) max_.build(a, true);
}

uint64_t RmqIndex::rmq(uint64_t i, uint64_t j) const {
  if (i > j || j >= n_ || min_.bp.size() == 0) throw std::invalid_argument("invalid range");
  return min_.query(i, j);
}

uint64_t RmqIndex::rMq(uint64_t i, uint64_t j) const {
  if (i > j || j >= n_ || max_.bp.size() == 0) throw std::invalid_argument("invalid range");
  return max_.query(i, j);
}

uint64_t RmqIndex::bits() const {
  uint64_t b = 0;
  for (const Stack* s : {&min_, &max_})
    b += s->bp.size() + s->bp.aux_bits() + 8 * s->word_min.size() + 96 * s->sb_min.size();
  return b;
}

PackedRmqIndex::PackedRmqIndex(const PackedSequence& a, const Config& cfg_in, uint64_t block)
    : n_(a.size()) {
  const Config cfg = cfg_in.resolved();
  const unsigned w = a.width();
  if (w > cfg.packed_width_max) throw std::invalid_argument("alphabet out of regime");
  verbatim_ = block == 0 && w <= static_cast<unsigned>(std::bit_width(cfg.lg_cap) - 1);
  if (verbatim_) {
    values_ = a;
    const auto v = a.to_vector();
    rmq_ = RmqIndex(v);
    count_ops(a.words().size());
    return;
  }
  block_ = block ? block : block_elems(cfg, w);
  const uint64_t nb = (n_ + block_ - 1) / block_;
  const unsigned rw = bits_for(block_ - 1);
  ranks_ = PackedSequence(n_, rw);
  bmin_ = PackedSequence(nb, w);
  bmax_ = PackedSequence(nb, w);
  // In-block ranks for a whole block come from one table lookup when it fits.
  const PackedSequence* table = nullptr;
  if (block_ >= 2 && block_ * w <= 20 && block_ * rw <= 64)
    table = tables_for(cfg).get("rank:" + std::to_string(w) + ":" + std::to_string(block_),
                                static_cast<unsigned>(block_ * w), static_cast<unsigned>(block_ * rw),
                                [&](uint64_t in) {
                                  uint64_t out = 0;
                                  for (uint64_t i = 0; i < block_; ++i) {
                                    const uint64_t v = (in >> (i * w)) & low_mask(w);
                                    uint64_t r = 0;
                                    for (uint64_t k = 0; k < block_; ++k)
                                      r += ((in >> (k * w)) & low_mask(w)) < v;
                                    out |= r << (i * rw);
                                  }
                                  return out;
                                });
  for (uint64_t b = 0; b < nb; ++b) {
    const uint64_t s = b * block_, len = std::min(block_, n_ - s);
    if (table && len == block_) {
      ranks_.put_field(s * rw, static_cast<unsigned>(block_ * rw),
                       table->get(a.field(s * w, static_cast<unsigned>(block_ * w))));
      ++counters().table_lookups;
      count_ops(1);
    } else {
      for (uint64_t i = 0; i < len; ++i) {
        uint64_t r = 0;
        for (uint64_t k = 0; k < len; ++k) r += a.get(s + k) < a.get(s + i);
        ranks_.set(s + i, r);
      }
      count_ops(len);
    }
    bmin_.set(b, a.get(s + in_block(s, s + len - 1, false)));
    bmax_.set(b, a.get(s + in_block(s, s + len - 1, true)));
  }
  const auto mn = bmin_.to_vector(), mx = bmax_.to_vector();
  rmq_ = RmqIndex(mn, true, false);
  rmq_max_ = RmqIndex(mx, false, true);
}

uint64_t PackedRmqIndex::in_block(uint64_t i, uint64_t j, bool max) const {
  uint64_t best = i, r = ranks_.get(i);
  for (uint64_t k = i + 1; k <= j; ++k) {
    const uint64_t rk = ranks_.get(k);
    if (max ? rk > r : rk < r) best = k, r = rk;
  }
  count_ops(1);
  return best - (i / block_) * block_;
}

RmqResult PackedRmqIndex::query(Accessor a, uint64_t i, uint64_t j, bool max) const {
  if (i > j || j >= n_) throw std::invalid_argument("invalid range");
  if (verbatim_) {
    const uint64_t p = i == j ? i : (max ? rmq_.rMq(i, j) : rmq_.rmq(i, j));
    return {p, values_.get(p)};
  }
  const uint64_t bi = i / block_, bj = j / block_;
  auto better = [&](const RmqResult& c, const RmqResult& best) {
    return max ? c.value > best.value : c.value < best.value;
  };
  if (bi == bj) {
    const uint64_t p = bi * block_ + in_block(i, j, max);
    return {p, a(p)};
  }
  const uint64_t pl = bi * block_ + in_block(i, (bi + 1) * block_ - 1, max);
  RmqResult best{pl, a(pl)};
  if (bi + 1 < bj) {
    const uint64_t k = max ? rmq_max_.rMq(bi + 1, bj - 1) : rmq_.rmq(bi + 1, bj - 1);
    const uint64_t end = std::min(n_, (k + 1) * block_) - 1;
    const RmqResult mid{k * block_ + in_block(k * block_, end, max),
                        max ? bmax_.get(k) : bmin_.get(k)};
    if (better(mid, best)) best = mid;
  }
  const uint64_t pr = bj * block_ + in_block(bj * block_, j, max);
  const RmqResult right{pr, a(pr)};
  if (better(right, best)) best = right;
  return best;
}

}  // namespace orq
