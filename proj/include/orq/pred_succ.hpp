#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "orq/bitvector.hpp"
#include "orq/config.hpp"
#include "orq/packed.hpp"

namespace orq {

// pred(x) = max{j : A[j] <= x}, succ(x) = min{j : x <= A[j]}; kNotFound when empty.

// Predecessor search over explicit sorted distinct integers: an x-fast trie on every
// bucket's first element (one hash table over all prefix levels) plus buckets of
// about lg u elements searched by bisection.
class YFastIndex {
 public:
  YFastIndex() = default;
  // Throws std::invalid_argument("input not sorted") / ("duplicates not allowed").
  explicit YFastIndex(std::vector<uint64_t> values);

  [[nodiscard]] uint64_t size() const { return values_.size(); }
  [[nodiscard]] uint64_t value(uint64_t i) const { return values_[i]; }
  [[nodiscard]] int64_t pred(uint64_t x) const;
  [[nodiscard]] int64_t succ(uint64_t x) const;
  [[nodiscard]] uint64_t bits() const {
    return 64 * values_.size() + (64 + 8 + 32 + 32) * slots_key_.size();
  }

  template <class Ar>
  void serialize(Ar& ar) {
    ar(values_, width_, bucket_, slots_key_, slots_level_, slots_lo_, slots_hi_);
  }

 private:
  // Range [lo, hi] of representative indices below the prefix, or false.
  bool find(unsigned len, uint64_t prefix, uint32_t& lo, uint32_t& hi) const;
  [[nodiscard]] uint64_t rep(uint64_t r) const { return values_[r * bucket_]; }
  [[nodiscard]] uint64_t reps() const { return (values_.size() + bucket_ - 1) / bucket_; }

  std::vector<uint64_t> values_;
  unsigned width_ = 1;
  uint64_t bucket_ = 1;
  std::vector<uint64_t> slots_key_;
  std::vector<uint8_t> slots_level_;  // 0xff marks an empty slot
  std::vector<uint32_t> slots_lo_, slots_hi_;
};

// Predecessor search in the indexing model over sorted integers read through an
// accessor. Keys are cut into blocks; each block keeps a blind trie encoded as the
// highest differing bit between neighbours, and a YFastIndex over block maxima
// picks the block. One accessor call per query.
//
// With allow_duplicates the trie is built over first occurrences, recorded in a
// bitvector; succ returns a first occurrence and pred the last one.
class BlindTrieIndex {
 public:
  BlindTrieIndex() = default;
  BlindTrieIndex(std::span<const uint64_t> sorted, uint64_t block, bool allow_duplicates,
                 const Config& cfg = {});

  [[nodiscard]] uint64_t size() const { return n_; }
  [[nodiscard]] int64_t pred(Accessor a, uint64_t x) const;
  [[nodiscard]] int64_t succ(Accessor a, uint64_t x) const;
  [[nodiscard]] uint64_t aux_bits() const;

  template <class Ar>
  void serialize(Ar& ar) {
    ar(n_, distinct_, block_, duplicates_, diffs_, firsts_, maxima_);
  }

 private:
  // succ over the distinct keys; `key` reads distinct key i.
  template <class Key>
  int64_t succ_distinct(const Key& key, uint64_t x) const;
  [[nodiscard]] uint64_t distinct_pos(uint64_t i) const {
    return duplicates_ ? static_cast<uint64_t>(firsts_.select1(i + 1)) : i;
  }

  uint64_t n_ = 0, distinct_ = 0, block_ = 2;
  bool duplicates_ = false;
  PackedSequence diffs_;  // diffs_[k] = msb(key[k] ^ key[k+1]) within a block
  RankSelectBitVector firsts_;
  YFastIndex maxima_;
};

enum class PredSuccVariant : uint8_t { kGeneral, kPackedDistinct, kPackedDuplicates, kIndexing };

// Common front for the four variants. The general variant keeps the values and
// ignores the accessor.
class PredSuccIndex {
 public:
  PredSuccIndex() = default;
  PredSuccIndex(std::span<const uint64_t> sorted, PredSuccVariant variant, const Config& cfg = {});

  [[nodiscard]] PredSuccVariant variant() const { return variant_; }
  [[nodiscard]] int64_t pred(Accessor a, uint64_t x) const;
  [[nodiscard]] int64_t succ(Accessor a, uint64_t x) const;
  [[nodiscard]] uint64_t bits() const;

  template <class Ar>
  void serialize(Ar& ar) {
    ar(variant_, general_, trie_);
  }

 private:
  PredSuccVariant variant_ = PredSuccVariant::kGeneral;
  YFastIndex general_;
  BlindTrieIndex trie_;
};

}  // namespace orq
