#include "orq/seq_index.hpp"

#include <stdexcept>

namespace orq {

namespace {

constexpr unsigned kSuperShift = 16;

// Fields equal to a among the first `count` k-bit fields of w (k divides 64).
inline unsigned count_equal(uint64_t w, unsigned k, uint64_t a, unsigned count) {
  if (count == 0) return 0;
  const uint64_t lo = ~uint64_t{0} / low_mask(k);  // lowest bit of every field
  const uint64_t hi = lo << (k - 1);
  const uint64_t x = w ^ (lo * a);
  const uint64_t nonzero = (((x | hi) - lo) | x) & hi;
  const uint64_t valid = count * k >= 64 ? ~uint64_t{0} : low_mask(count * k);
  return count - std::popcount(nonzero & valid);
}

}  // namespace

SmallAlphabetRankIndex::SmallAlphabetRankIndex(const PackedSequence& a, uint64_t sigma,
                                               const Config& cfg_in)
    : n_(a.size()), sigma_(std::max<uint64_t>(sigma, 1)) {
  const Config cfg = cfg_in.resolved();
  if (sigma_ > cfg.small_alphabet_max)
    throw std::invalid_argument("alphabet too large for this index");
  digit_bits_ = cfg.small_fanout_bits;
  if (64 % digit_bits_ != 0) digit_bits_ = std::bit_floor(digit_bits_);
  const unsigned bits = bits_for(sigma_ - 1);
  height_ = std::max(1u, (bits + digit_bits_ - 1) / digit_bits_);
  const uint64_t d = uint64_t{1} << digit_bits_;
  // d 16-bit counters per block stay under 1/16 of the block's digit bits.
  block_shift_ = std::clamp(ceil_log2(256 * d / digit_bits_), 9u, kSuperShift);

  std::vector<uint64_t> cur = a.to_vector(), nxt(n_);
  for (uint64_t v : cur)
    if (v >= sigma_) throw std::invalid_argument("symbol out of alphabet");
  levels_.resize(height_);
  for (unsigned l = 0; l < height_; ++l) {
    Level& lv = levels_[l];
    lv.digits = PackedSequence(n_, digit_bits_);
    const uint64_t nodes = uint64_t{1} << (digit_bits_ * l);
    const unsigned child_shift = digit_bits_ * (height_ - 1 - l);
    const uint64_t nblocks = (n_ >> block_shift_) + 1;
    lv.super.assign(((n_ >> kSuperShift) + 1) * d, 0);
    lv.block.assign(nblocks * d, 0);
    std::vector<uint64_t> run(d, 0), sup(d, 0);
    for (uint64_t j = 0; j <= n_; ++j) {
      if ((j & low_mask(kSuperShift)) == 0) {
        for (uint64_t c = 0; c < d; ++c) sup[c] += run[c], run[c] = 0;
        for (uint64_t c = 0; c < d; ++c) lv.super[(j >> kSuperShift) * d + c] = sup[c];
      }
      if ((j & low_mask(block_shift_)) == 0)
        for (uint64_t c = 0; c < d; ++c) lv.block[(j >> block_shift_) * d + c] = uint16_t(run[c]);
      if (j == n_) break;
      const uint64_t dg = (cur[j] >> child_shift) & (d - 1);
      lv.digits.set(j, dg);
      ++run[dg];
    }
    count_ops(n_);
    if (l + 1 == height_) break;
    // Stable counting sort by the (l+1)-digit prefix gives the next level's order.
    std::vector<uint64_t> pos(nodes * d + 1, 0);
    for (uint64_t v : cur) ++pos[(v >> child_shift) + 1];
    for (uint64_t i = 0; i < nodes * d; ++i) pos[i + 1] += pos[i];
    for (uint64_t v : cur) nxt[pos[v >> child_shift]++] = v;
    std::swap(cur, nxt);
    count_ops(n_);
  }
}

uint64_t SmallAlphabetRankIndex::occ(const Level& lv, uint64_t a, uint64_t p) const {
  const uint64_t d = uint64_t{1} << digit_bits_;
  uint64_t r = lv.super[(p >> kSuperShift) * d + a] + lv.block[(p >> block_shift_) * d + a];
  const unsigned k = digit_bits_;
  const unsigned per_word = 64 / k;
  uint64_t e = (p >> block_shift_) << block_shift_;
  const auto& words = lv.digits.words();
  while (e < p) {
    const unsigned cnt = static_cast<unsigned>(std::min<uint64_t>(per_word, p - e));
    r += count_equal(words[e * k / 64], k, a, cnt);
    e += cnt;
  }
  return r;
}

void SmallAlphabetRankIndex::descend(unsigned l, uint64_t a, uint64_t& s, uint64_t& e) const {
  const Level& lv = levels_[l];
  uint64_t before = 0;
  for (uint64_t b = 0; b < a; ++b) before += occ(lv, b, e) - occ(lv, b, s);
  const uint64_t len = occ(lv, a, e) - occ(lv, a, s);
  s += before;
  e = s + len;
}

uint64_t SmallAlphabetRankIndex::rank_before(uint64_t c, uint64_t p) const {
  uint64_t s = 0, e = n_;
  for (unsigned l = 0; l < height_; ++l) {
    const Level& lv = levels_[l];
    const uint64_t a = digit(c, l);
    const uint64_t r = occ(lv, a, p) - occ(lv, a, s);
    if (l + 1 == height_ || r == 0) return r;
    descend(l, a, s, e);
    p = s + r;
  }
  return 0;
}

uint64_t SmallAlphabetRankIndex::count_before(uint64_t c, uint64_t p) const {
  if (c >= sigma_) c = sigma_ - 1;
  uint64_t s = 0, e = n_, total = 0;
  for (unsigned l = 0; l < height_; ++l) {
    const Level& lv = levels_[l];
    const uint64_t a = digit(c, l);
    for (uint64_t b = 0; b < a; ++b) total += occ(lv, b, p) - occ(lv, b, s);
    const uint64_t r = occ(lv, a, p) - occ(lv, a, s);
    if (l + 1 == height_ || r == 0) return total + r;
    descend(l, a, s, e);
    p = s + r;
  }
  return total;
}

uint64_t SmallAlphabetRankIndex::rank(uint64_t c, uint64_t i) const {
  if (i >= n_) throw std::out_of_range("index out of bounds");
  if (c >= sigma_) return 0;
  return rank_before(c, i + 1);
}

uint64_t SmallAlphabetRankIndex::count(uint64_t c, uint64_t i) const {
  if (i >= n_) throw std::out_of_range("index out of bounds");
  return count_before(c, i + 1);
}

uint64_t SmallAlphabetRankIndex::sequence_bits() const {
  uint64_t b = 0;
  for (const auto& lv : levels_) b += lv.digits.bit_size();
  return b;
}

uint64_t SmallAlphabetRankIndex::aux_bits() const {
  uint64_t b = 0;
  for (const auto& lv : levels_)
    b += 64 * lv.super.size() + 16 * lv.block.size();
  return b;
}

SelectIndex::SelectIndex(const PackedSequence& a, uint64_t sigma)
    : pos_(a.size(), bits_for(a.size())), start_(sigma + 1, 0) {
  for (uint64_t i = 0; i < a.size(); ++i) ++start_[a.get(i) + 1];
  for (uint64_t c = 0; c < sigma; ++c) start_[c + 1] += start_[c];
  std::vector<uint64_t> fill(start_.begin(), start_.end() - 1);
  for (uint64_t i = 0; i < a.size(); ++i) pos_.set(fill[a.get(i)]++, i);
  count_ops(2 * a.size());
}

int64_t SelectIndex::select(uint64_t c, uint64_t k) const {
  if (k == 0) return -1;
  if (k > occurrences(c)) return kNotFound;
  return static_cast<int64_t>(pos_.get(start_[c] + k - 1));
}

}  // namespace orq
