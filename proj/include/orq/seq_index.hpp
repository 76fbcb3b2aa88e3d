#pragma once

#include <cstdint>
#include <vector>

#include "orq/config.hpp"
#include "orq/packed.hpp"

namespace orq {

// Rank and count over a sequence from a polylog-size alphabet. Internally a d-ary
// wavelet tree stored level by level; each level keeps per-block digit counts.
class SmallAlphabetRankIndex {
 public:
  SmallAlphabetRankIndex() = default;
  // Throws std::invalid_argument("alphabet too large for this index") above the
  // configured threshold.
  SmallAlphabetRankIndex(const PackedSequence& a, uint64_t sigma, const Config& cfg = {});

  [[nodiscard]] uint64_t size() const { return n_; }
  [[nodiscard]] uint64_t sigma() const { return sigma_; }

  // Occurrences of c in A[0..i]; throws std::out_of_range("index out of bounds").
  [[nodiscard]] uint64_t rank(uint64_t c, uint64_t i) const;
  // |{j <= i : A[j] <= c}|.
  [[nodiscard]] uint64_t count(uint64_t c, uint64_t i) const;
  // Unchecked variants over the half-open prefix [0, p).
  [[nodiscard]] uint64_t rank_before(uint64_t c, uint64_t p) const;
  [[nodiscard]] uint64_t count_before(uint64_t c, uint64_t p) const;

  [[nodiscard]] uint64_t sequence_bits() const;
  [[nodiscard]] uint64_t aux_bits() const;

  template <class Ar>
  void serialize(Ar& ar) {
    ar(n_, sigma_, digit_bits_, height_, block_shift_, levels_);
  }

 private:
  struct Level {
    PackedSequence digits;
    std::vector<uint64_t> super;       // absolute counts per 2^16 elements, per digit
    std::vector<uint16_t> block;       // counts relative to the superblock, per digit
    template <class Ar>
    void serialize(Ar& ar) {
      ar(digits, super, block);
    }
  };
  [[nodiscard]] uint64_t occ(const Level& lv, uint64_t a, uint64_t p) const;
  // Narrows [s, e) at level l to the child holding digit a, one level down.
  void descend(unsigned l, uint64_t a, uint64_t& s, uint64_t& e) const;
  [[nodiscard]] uint64_t digit(uint64_t c, unsigned l) const {
    return (c >> (digit_bits_ * (height_ - 1 - l))) & low_mask(digit_bits_);
  }

  uint64_t n_ = 0, sigma_ = 0;
  unsigned digit_bits_ = 1, height_ = 1, block_shift_ = 9;
  std::vector<Level> levels_;
};

// select over a packed sequence: positions grouped by symbol.
class SelectIndex {
 public:
  SelectIndex() = default;
  SelectIndex(const PackedSequence& a, uint64_t sigma);

  // 0-based position of the k-th c (k >= 1); -1 for k = 0; kNotFound if absent.
  [[nodiscard]] int64_t select(uint64_t c, uint64_t k) const;
  [[nodiscard]] uint64_t occurrences(uint64_t c) const {
    return c + 1 < start_.size() ? start_[c + 1] - start_[c] : 0;
  }

  template <class Ar>
  void serialize(Ar& ar) {
    ar(pos_, start_);
  }

 private:
  PackedSequence pos_;
  std::vector<uint64_t> start_;
};

}  // namespace orq
