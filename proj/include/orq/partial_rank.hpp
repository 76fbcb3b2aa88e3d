#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "orq/bitvector.hpp"
#include "orq/config.hpp"
#include "orq/packed.hpp"
#include "orq/seq_index.hpp"

namespace orq {

// rank'(A, j): occurrences of A[j] in A[s..j], where s is the start of j's segment.
// A may be cut into consecutive segments (the node lists of one tree level); with no
// segments given the whole sequence is one segment.
//
// Three regimes, chosen by alphabet size:
//   small alphabet  - difference of two ranks in a SmallAlphabetRankIndex;
//   chunked         - unary chunk counts B_c plus in-chunk answers P_tau;
//   explicit        - the answers themselves, for alphabets too large for chunking.
class PartialRankIndex {
 public:
  enum class Regime : uint8_t { kSmallAlphabet, kChunked, kExplicit };

  PartialRankIndex() = default;
  PartialRankIndex(const PackedSequence& a, uint64_t sigma, const Config& cfg = {},
                   std::span<const uint64_t> segment_lengths = {});

  [[nodiscard]] uint64_t size() const { return n_; }
  [[nodiscard]] Regime regime() const { return regime_; }
  [[nodiscard]] uint64_t bits() const;

  // One accessor call for the small-alphabet and chunked regimes, none otherwise.
  // Throws std::out_of_range("index out of bounds") for j >= size().
  [[nodiscard]] uint64_t query(Accessor a, uint64_t j, uint64_t segment_start = 0) const;
  // Same answer when the caller already holds c = A[j]; no accessor call.
  [[nodiscard]] uint64_t query_symbol(uint64_t c, uint64_t j, uint64_t segment_start = 0) const;

  // Chunked regime internals, exposed for tests.
  [[nodiscard]] const RankSelectBitVector& chunk_counts(uint64_t c) const { return b_[c]; }
  [[nodiscard]] const PackedSequence& local_ranks(uint64_t tau) const { return p_[tau]; }

  template <class Ar>
  void serialize(Ar& ar) {
    ar(n_, sigma_, regime_, small_, chunk_start_, b_, p_, answers_);
  }

 private:
  void build_chunked(const PackedSequence& a, std::span<const uint64_t> chunk_lengths,
                     const Config& cfg);

  uint64_t n_ = 0, sigma_ = 0;
  Regime regime_ = Regime::kExplicit;
  SmallAlphabetRankIndex small_;
  RankSelectBitVector chunk_start_;
  std::vector<RankSelectBitVector> b_;
  std::vector<PackedSequence> p_;
  PackedSequence answers_;
};

}  // namespace orq
