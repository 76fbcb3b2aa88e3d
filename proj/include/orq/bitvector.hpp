#pragma once

#include <cstdint>
#include <vector>

#include "orq/packed.hpp"

namespace orq {

// Plain bits with constant-time rank and select. Counters follow the rank9 layout:
// per 512-bit block one absolute count and seven packed 9-bit in-block counts.
// Select is guided by samples taken every 512 occurrences.
class RankSelectBitVector {
 public:
  RankSelectBitVector() = default;
  explicit RankSelectBitVector(PackedSequence bits);

  [[nodiscard]] uint64_t size() const { return bits_.size(); }
  [[nodiscard]] bool get(uint64_t i) const { return (bits_.words()[i >> 6] >> (i & 63)) & 1; }
  [[nodiscard]] bool operator[](uint64_t i) const { return get(i); }
  [[nodiscard]] const PackedSequence& bits() const { return bits_; }

  // Occurrences of c in [0..i]; throws std::out_of_range("index out of bounds").
  [[nodiscard]] uint64_t rank(bool c, uint64_t i) const;
  // Ones in [0, p) for p <= size(); unchecked.
  [[nodiscard]] uint64_t rank1_before(uint64_t p) const {
    if (p == 0) return 0;
    const uint64_t w = (p - 1) >> 6, blk = w >> 3, sub = w & 7;
    uint64_t r = counts_[2 * blk];
    if (sub) r += (counts_[2 * blk + 1] >> (9 * (sub - 1))) & 511;
    const unsigned tail = ((p - 1) & 63) + 1;
    return r + std::popcount(bits_.words()[w] & low_mask(tail));
  }
  [[nodiscard]] uint64_t rank0_before(uint64_t p) const { return p - rank1_before(p); }

  // Position of the k-th occurrence of c (1-based); -1 for k = 0, kNotFound if absent.
  [[nodiscard]] int64_t select(bool c, uint64_t k) const;
  [[nodiscard]] int64_t select1(uint64_t k) const { return select(true, k); }
  [[nodiscard]] int64_t select0(uint64_t k) const { return select(false, k); }

  [[nodiscard]] uint64_t ones() const { return ones_; }
  [[nodiscard]] uint64_t zeros() const { return size() - ones_; }
  [[nodiscard]] uint64_t aux_bits() const {
    return 64 * (counts_.size() + samples1_.size() + samples0_.size());
  }

  template <class Ar>
  void serialize(Ar& ar) {
    ar(bits_, counts_, samples1_, samples0_, ones_);
  }

 private:
  [[nodiscard]] uint64_t block_ones(uint64_t blk) const { return counts_[2 * blk]; }
  PackedSequence bits_;
  std::vector<uint64_t> counts_;
  std::vector<uint64_t> samples1_, samples0_;
  uint64_t ones_ = 0;
};

// Appends bits and produces a RankSelectBitVector.
class BitVectorBuilder {
 public:
  void push(bool b) {
    if ((len_ & 63) == 0) words_.push_back(0);
    if (b) words_.back() |= uint64_t{1} << (len_ & 63);
    ++len_;
  }
  void push_run(bool b, uint64_t count);
  [[nodiscard]] uint64_t size() const { return len_; }
  RankSelectBitVector build() {
    return RankSelectBitVector(PackedSequence::from_words(std::move(words_), len_, 1));
  }

 private:
  std::vector<uint64_t> words_;
  uint64_t len_ = 0;
};

// Position of the k-th one (0-based k) inside a word known to have more than k ones.
unsigned select_in_word(uint64_t w, unsigned k);

}  // namespace orq
