#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "orq/bitvector.hpp"
#include "orq/config.hpp"
#include "orq/packed.hpp"

namespace orq {

// Range minimum/maximum without access to the array: each direction keeps the balanced
// parentheses of its left-to-right stack plus an excess-minimum directory.
// Ties go to the leftmost position.
class RmqIndex {
 public:
  RmqIndex() = default;
  explicit RmqIndex(std::span<const uint64_t> a, bool with_min = true, bool with_max = true);

  [[nodiscard]] uint64_t size() const { return n_; }
  // Throws std::invalid_argument("invalid range") unless i <= j < size().
  [[nodiscard]] uint64_t rmq(uint64_t i, uint64_t j) const;
  [[nodiscard]] uint64_t rMq(uint64_t i, uint64_t j) const;
  [[nodiscard]] uint64_t bits() const;

  template <class Ar>
  void serialize(Ar& ar) {
    ar(n_, min_, max_);
  }

  // Parentheses of one direction with rightmost-minimum-excess support.
  struct Stack {
    RankSelectBitVector bp;       // '(' = 1
    std::vector<int8_t> word_min;  // min prefix excess inside each word, relative
    std::vector<int64_t> sb_min;   // sparse table over superblocks: min excess
    std::vector<uint32_t> sb_arg;  // and the rightmost superblock attaining it
    uint64_t nsb = 0;

    void build(std::span<const uint64_t> a, bool max);
    [[nodiscard]] uint64_t query(uint64_t i, uint64_t j) const;
    [[nodiscard]] int64_t excess_before_word(uint64_t w) const;

    template <class Ar>
    void serialize(Ar& ar) {
      ar(bp, word_min, sb_min, sb_arg, nsb);
    }
  };

 private:
  uint64_t n_ = 0;
  Stack min_, max_;
};

struct RmqResult {
  uint64_t pos = 0;
  uint64_t value = 0;
  bool operator==(const RmqResult&) const = default;
};

// Range min/max in the indexing model. Narrow elements are stored verbatim beside an
// RmqIndex; wider ones keep, per block of b elements, each element's rank inside the
// block plus the block minima and maxima. A query reads at most three elements.
class PackedRmqIndex {
 public:
  PackedRmqIndex() = default;
  // Throws std::invalid_argument("alphabet out of regime") when a.width() exceeds the
  // configured packed width. block = 0 derives the block length from the width.
  PackedRmqIndex(const PackedSequence& a, const Config& cfg = {}, uint64_t block = 0);

  [[nodiscard]] uint64_t size() const { return n_; }
  [[nodiscard]] bool verbatim() const { return verbatim_; }
  [[nodiscard]] const PackedSequence& block_minima() const { return bmin_; }

  // Leftmost extremum of A[i..j] and its value. Throws std::invalid_argument("invalid range").
  [[nodiscard]] RmqResult rmq(Accessor a, uint64_t i, uint64_t j) const { return query(a, i, j, false); }
  [[nodiscard]] RmqResult rMq(Accessor a, uint64_t i, uint64_t j) const { return query(a, i, j, true); }

  template <class Ar>
  void serialize(Ar& ar) {
    ar(n_, block_, verbatim_, values_, ranks_, bmin_, bmax_, rmq_, rmq_max_);
  }

 private:
  [[nodiscard]] RmqResult query(Accessor a, uint64_t i, uint64_t j, bool max) const;
  // Leftmost extremum position inside one block, from the stored in-block ranks.
  [[nodiscard]] uint64_t in_block(uint64_t i, uint64_t j, bool max) const;

  uint64_t n_ = 0, block_ = 1;
  bool verbatim_ = true;
  PackedSequence values_;  // verbatim mode
  PackedSequence ranks_;   // blocked mode: elements of the block smaller than this one
  PackedSequence bmin_, bmax_;
  RmqIndex rmq_;      // over values_ (verbatim) or bmin_ (blocked)
  RmqIndex rmq_max_;  // over bmax_ (blocked)
};

}  // namespace orq
