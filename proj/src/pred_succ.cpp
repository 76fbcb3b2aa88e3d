#include "orq/pred_succ.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace orq {

namespace {

void check_sorted(std::span<const uint64_t> a, bool allow_duplicates) {
  for (uint64_t i = 1; i < a.size(); ++i) {
    if (a[i] < a[i - 1]) throw std::invalid_argument("input not sorted");
    if (!allow_duplicates && a[i] == a[i - 1]) throw std::invalid_argument("duplicates not allowed");
  }
}

uint64_t mix(uint64_t prefix, unsigned len) {
  uint64_t h = (prefix + len) * 0x9e3779b97f4a7c15ULL;
  h ^= h >> 29;
  h *= 0xbf58476d1ce4e5b9ULL;
  return h ^ (h >> 32);
}

unsigned msb(uint64_t v) { return 63u - static_cast<unsigned>(std::countl_zero(v)); }

}  // namespace

YFastIndex::YFastIndex(std::vector<uint64_t> values) : values_(std::move(values)) {
  check_sorted(values_, false);
  if (values_.empty()) return;
  width_ = bits_for(values_.back());
  bucket_ = 2 * uint64_t{width_};
  const uint64_t r = reps();
  // Distinct prefixes: the root plus, per neighbour pair, the lengths beyond their common prefix.
  uint64_t distinct = 1 + width_;
  for (uint64_t i = 1; i < r; ++i)
    distinct += width_ - (std::countl_zero(rep(i - 1) ^ rep(i)) - (64 - width_));
  uint64_t slots = 4;
  while (slots < distinct + distinct / 2) slots <<= 1;
  slots_key_.assign(slots, 0);
  slots_level_.assign(slots, 0xff);
  slots_lo_.assign(slots, 0);
  slots_hi_.assign(slots, 0);
  for (uint64_t i = 0; i < r; ++i) {
    const uint64_t v = rep(i);
    for (unsigned len = 0; len <= width_; ++len) {
      const uint64_t p = len == 0 ? 0 : v >> (width_ - len);
      uint64_t s = mix(p, len) & (slots - 1);
      while (slots_level_[s] != 0xff && !(slots_level_[s] == len && slots_key_[s] == p))
        s = (s + 1) & (slots - 1);
      if (slots_level_[s] == 0xff) {
        slots_level_[s] = static_cast<uint8_t>(len);
        slots_key_[s] = p;
        slots_lo_[s] = static_cast<uint32_t>(i);
      }
      slots_hi_[s] = static_cast<uint32_t>(i);
    }
  }
  count_ops(r * (width_ + 1) + values_.size());
}

bool YFastIndex::find(unsigned len, uint64_t prefix, uint32_t& lo, uint32_t& hi) const {
  const uint64_t m = slots_key_.size() - 1;
  for (uint64_t s = mix(prefix, len) & m;; s = (s + 1) & m) {
    count_ops(1);
    if (slots_level_[s] == 0xff) return false;
    if (slots_level_[s] == len && slots_key_[s] == prefix) {
      lo = slots_lo_[s];
      hi = slots_hi_[s];
      return true;
    }
  }
}

int64_t YFastIndex::succ(uint64_t x) const {
  const uint64_t n = values_.size();
  if (n == 0 || x > values_.back()) return kNotFound;
  if (x <= values_[0]) return 0;
  // Longest prefix of x shared with a representative.
  unsigned best = 0;
  uint32_t lo = 0, hi = static_cast<uint32_t>(reps() - 1);
  for (unsigned a = 1, b = width_; a <= b;) {
    const unsigned mid = (a + b) / 2;
    uint32_t l, h;
    if (find(mid, x >> (width_ - mid), l, h)) {
      best = mid, lo = l, hi = h;
      a = mid + 1;
    } else {
      b = mid - 1;
    }
  }
  // Largest representative <= x; x > values_[0] so it exists.
  uint64_t r;
  if (best == width_) r = lo;
  else if ((x >> (width_ - best - 1)) & 1) r = hi;
  else r = lo - 1;
  const auto first = values_.begin() + static_cast<int64_t>(r * bucket_);
  const auto last = values_.begin() + static_cast<int64_t>(std::min(n, (r + 1) * bucket_));
  count_ops(std::bit_width(bucket_));
  const auto it = std::lower_bound(first, last, x);
  return it - values_.begin();  // x <= values_.back() keeps this in range
}

int64_t YFastIndex::pred(uint64_t x) const {
  const int64_t s = succ(x);
  if (s == kNotFound) return values_.empty() ? kNotFound : static_cast<int64_t>(values_.size()) - 1;
  if (values_[s] == x) return s;
  return s == 0 ? kNotFound : s - 1;
}

BlindTrieIndex::BlindTrieIndex(std::span<const uint64_t> sorted, uint64_t block, bool allow_duplicates,
                               const Config& cfg)
    : n_(sorted.size()), block_(std::max<uint64_t>(block, 1)), duplicates_(allow_duplicates) {
  check_sorted(sorted, allow_duplicates);
  std::vector<uint64_t> keys;
  if (duplicates_) {
    BitVectorBuilder firsts;
    for (uint64_t i = 0; i < n_; ++i) {
      const bool first = i == 0 || sorted[i] != sorted[i - 1];
      firsts.push(first);
      if (first) keys.push_back(sorted[i]);
    }
    firsts_ = firsts.build();
  } else {
    keys.assign(sorted.begin(), sorted.end());
  }
  distinct_ = keys.size();
  diffs_ = PackedSequence(distinct_, 6);
  std::vector<uint64_t> maxima;
  // Narrow keys: a whole block's skip values come from one table lookup.
  const unsigned w = keys.empty() ? 1 : bits_for(keys.back());
  const PackedSequence* table = nullptr;
  if (block_ >= 2 && block_ * w <= 24 && (block_ - 1) * 6 <= 64)
    table = tables_for(cfg).get("trie:" + std::to_string(w) + ":" + std::to_string(block_),
                                static_cast<unsigned>(block_ * w), static_cast<unsigned>((block_ - 1) * 6),
                                [&](uint64_t in) {
                                  uint64_t out = 0;
                                  for (uint64_t k = 0; k + 1 < block_; ++k) {
                                    const uint64_t d = ((in >> (k * w)) ^ (in >> ((k + 1) * w))) & low_mask(w);
                                    out |= uint64_t{d ? msb(d) : 0} << (6 * k);
                                  }
                                  return out;
                                });
  for (uint64_t s = 0; s < distinct_; s += block_) {
    const uint64_t e = std::min(distinct_, s + block_);
    if (table && e - s == block_) {
      uint64_t in = 0;
      for (uint64_t k = s; k < e; ++k) in |= keys[k] << ((k - s) * w);
      diffs_.put_field(s * 6, static_cast<unsigned>((block_ - 1) * 6), table->get(in));
      ++counters().table_lookups;
      count_ops(1);
    } else {
      for (uint64_t k = s; k + 1 < e; ++k) diffs_.set(k, msb(keys[k] ^ keys[k + 1]));
      count_ops(e - s);
    }
    maxima.push_back(keys[e - 1]);
  }
  maxima_ = YFastIndex(std::move(maxima));
}

template <class Key>
int64_t BlindTrieIndex::succ_distinct(const Key& key, uint64_t x) const {
  const int64_t t = maxima_.succ(x);
  if (t == kNotFound) return kNotFound;
  const uint64_t s = static_cast<uint64_t>(t) * block_;
  const uint64_t e = std::min(distinct_, s + block_);
  // Blind descent: split at the highest differing bit and follow x's bit there.
  uint64_t lo = s, hi = e - 1;
  while (lo < hi) {
    uint64_t m = lo;
    for (uint64_t k = lo + 1; k < hi; ++k)
      if (diffs_.get(k) > diffs_.get(m)) m = k;
    count_ops(hi - lo);
    if ((x >> diffs_.get(m)) & 1) lo = m + 1;
    else hi = m;
  }
  const uint64_t v = key(lo);
  if (v == x) return static_cast<int64_t>(lo);
  // The leaf shares the longest prefix with x; widen to every key sharing it.
  const unsigned h = msb(v ^ x);
  uint64_t l = lo, r = lo;
  while (l > s && diffs_.get(l - 1) < h) --l;
  while (r + 1 < e && diffs_.get(r) < h) ++r;
  count_ops(e - s);
  return static_cast<int64_t>(((x >> h) & 1) ? r + 1 : l);
}

int64_t BlindTrieIndex::succ(Accessor a, uint64_t x) const {
  const int64_t i = succ_distinct([&](uint64_t k) { return a(distinct_pos(k)); }, x);
  return i == kNotFound ? kNotFound : static_cast<int64_t>(distinct_pos(static_cast<uint64_t>(i)));
}

int64_t BlindTrieIndex::pred(Accessor a, uint64_t x) const {
  bool exact = false;
  int64_t i = succ_distinct(
      [&](uint64_t k) {
        const uint64_t v = a(distinct_pos(k));
        exact = v == x;
        return v;
      },
      x);
  if (i == kNotFound) i = static_cast<int64_t>(distinct_);
  if (!exact) --i;
  if (i < 0) return kNotFound;
  const auto d = static_cast<uint64_t>(i);
  if (!duplicates_) return i;
  // Last occurrence of distinct key d.
  return d + 1 < distinct_ ? firsts_.select1(d + 2) - 1 : static_cast<int64_t>(n_) - 1;
}

uint64_t BlindTrieIndex::aux_bits() const {
  return diffs_.bit_size() + (duplicates_ ? firsts_.size() + firsts_.aux_bits() : 0) + maxima_.bits();
}

uint64_t PredSuccIndex::bits() const {
  return variant_ == PredSuccVariant::kGeneral ? general_.bits() : trie_.aux_bits();
}

PredSuccIndex::PredSuccIndex(std::span<const uint64_t> sorted, PredSuccVariant variant, const Config& cfg)
    : variant_(variant) {
  const Config c = cfg.resolved();
  switch (variant) {
    case PredSuccVariant::kGeneral:
      general_ = YFastIndex(std::vector<uint64_t>(sorted.begin(), sorted.end()));
      break;
    case PredSuccVariant::kPackedDistinct:
      trie_ = BlindTrieIndex(sorted, c.patricia_block, false, c);
      break;
    case PredSuccVariant::kPackedDuplicates:
      trie_ = BlindTrieIndex(sorted, c.patricia_block, true, c);
      break;
    case PredSuccVariant::kIndexing:
      trie_ = BlindTrieIndex(sorted, c.pred_block, false, c);
      break;
  }
}

int64_t PredSuccIndex::pred(Accessor a, uint64_t x) const {
  return variant_ == PredSuccVariant::kGeneral ? general_.pred(x) : trie_.pred(a, x);
}

int64_t PredSuccIndex::succ(Accessor a, uint64_t x) const {
  return variant_ == PredSuccVariant::kGeneral ? general_.succ(x) : trie_.succ(a, x);
}

}  // namespace orq
