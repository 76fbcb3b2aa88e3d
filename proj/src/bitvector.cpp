#include "orq/bitvector.hpp"

#include <array>
#include <stdexcept>

namespace orq {

namespace {

constexpr uint64_t kBlockBits = 512;
constexpr uint64_t kSampleRate = 512;

struct SelectTable {
  std::array<std::array<uint8_t, 8>, 256> pos{};
  SelectTable() {
    for (unsigned b = 0; b < 256; ++b) {
      unsigned k = 0;
      for (unsigned i = 0; i < 8; ++i)
        if (b >> i & 1) pos[b][k++] = static_cast<uint8_t>(i);
    }
  }
};

const SelectTable& select_table() {
  static const SelectTable t;
  return t;
}

}  // namespace

unsigned select_in_word(uint64_t w, unsigned k) {
  unsigned base = 0;
  for (;;) {
    const unsigned byte = w & 0xff;
    const unsigned c = std::popcount(byte);
    if (k < c) return base + select_table().pos[byte][k];
    k -= c;
    w >>= 8;
    base += 8;
  }
}

RankSelectBitVector::RankSelectBitVector(PackedSequence bits) : bits_(std::move(bits)) {
  if (bits_.width() != 1) throw std::invalid_argument("bitvector needs width 1");
  const auto& words = bits_.words();
  const uint64_t nblocks = (words.size() + 7) / 8;
  counts_.assign(2 * nblocks + 2, 0);
  uint64_t total = 0;
  for (uint64_t b = 0; b < nblocks; ++b) {
    counts_[2 * b] = total;
    uint64_t rel = 0, packed = 0;
    for (unsigned s = 0; s < 8; ++s) {
      const uint64_t wi = b * 8 + s;
      if (s > 0) packed |= rel << (9 * (s - 1));
      if (wi < words.size()) rel += std::popcount(words[wi]);
    }
    counts_[2 * b + 1] = packed;
    total += rel;
  }
  counts_[2 * nblocks] = total;
  ones_ = total;
  count_ops(words.size());

  // Sample the block holding occurrence 1 + k*kSampleRate, for both bit values.
  for (uint64_t b = 0, next1 = 1, next0 = 1; b < nblocks; ++b) {
    const uint64_t end1 = counts_[2 * b + 2];
    const uint64_t end0 = std::min(size(), (b + 1) * kBlockBits) - end1;
    while (next1 <= end1) { samples1_.push_back(b); next1 += kSampleRate; }
    while (next0 <= end0) { samples0_.push_back(b); next0 += kSampleRate; }
  }
}

uint64_t RankSelectBitVector::rank(bool c, uint64_t i) const {
  if (i >= size()) throw std::out_of_range("index out of bounds");
  const uint64_t r = rank1_before(i + 1);
  return c ? r : i + 1 - r;
}

int64_t RankSelectBitVector::select(bool c, uint64_t k) const {
  if (k == 0) return -1;
  if (k > (c ? ones_ : zeros())) return kNotFound;
  const auto& samples = c ? samples1_ : samples0_;
  const uint64_t nblocks = (bits_.words().size() + 7) / 8;
  auto before = [&](uint64_t b) {  // occurrences of c before block b
    return c ? counts_[2 * b] : b * kBlockBits - counts_[2 * b];
  };
  const uint64_t s = (k - 1) / kSampleRate;
  uint64_t lo = samples[s];
  uint64_t hi = s + 1 < samples.size() ? samples[s + 1] : nblocks - 1;
  while (lo < hi) {  // last block with before(b) < k
    const uint64_t mid = (lo + hi + 1) / 2;
    if (before(mid) < k) lo = mid;
    else hi = mid - 1;
  }
  uint64_t rem = k - before(lo);
  const uint64_t rel = counts_[2 * lo + 1];
  unsigned sub = 0;
  for (unsigned t = 1; t < 8; ++t) {
    const uint64_t ones_before = (rel >> (9 * (t - 1))) & 511;
    const uint64_t occ = c ? ones_before : t * 64 - ones_before;
    if (occ < rem) sub = t;
    else break;
  }
  if (sub) {
    const uint64_t ones_before = (rel >> (9 * (sub - 1))) & 511;
    rem -= c ? ones_before : sub * 64 - ones_before;
  }
  const uint64_t wi = lo * 8 + sub;
  const uint64_t w = c ? bits_.words()[wi] : ~bits_.words()[wi];
  return static_cast<int64_t>(wi * 64 + select_in_word(w, static_cast<unsigned>(rem - 1)));
}

void BitVectorBuilder::push_run(bool b, uint64_t count) {
  while (count > 0 && (len_ & 63) != 0) {
    push(b);
    --count;
  }
  const uint64_t full = count / 64;
  words_.insert(words_.end(), full, b ? ~uint64_t{0} : 0);
  len_ += full * 64;
  count -= full * 64;
  while (count-- > 0) push(b);
}

}  // namespace orq
