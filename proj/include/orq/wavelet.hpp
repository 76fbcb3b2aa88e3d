#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "orq/bitvector.hpp"
#include "orq/config.hpp"
#include "orq/packed.hpp"

namespace orq {

// Node of the complete d-ary tree: level 0 is the root, level L holds the leaves.
struct NodeId {
  unsigned level = 0;
  uint64_t index = 0;
  bool operator==(const NodeId&) const = default;
};

struct WaveletOptions {
  bool with_values = true;   // keep A_l, the x-coordinates in level order
  bool with_indexes = true;  // keep I_l, the y-coordinates in level order
};

// d-ary wavelet tree over A[0..n) from [0, sigma), sigma padded up to d^L.
//
// Level l lists every point ordered by (top l digits of x, y); the segment of a node
// is N(v). The level-l child-rank sequence S_l is the concatenation of S(v) over the
// nodes of level l, and a unary bitvector per level records where segments start.
// Empty nodes have empty segments.
class WaveletTree {
 public:
  WaveletTree() = default;

  [[nodiscard]] uint64_t size() const { return n_; }
  [[nodiscard]] uint64_t sigma() const { return sigma_; }
  [[nodiscard]] unsigned fanout_bits() const { return lgd_; }
  [[nodiscard]] uint64_t fanout() const { return uint64_t{1} << lgd_; }
  [[nodiscard]] unsigned levels() const { return levels_; }  // leaf level L
  [[nodiscard]] unsigned symbol_bits() const { return lgd_ * levels_; }

  [[nodiscard]] const PackedSequence& symbols(unsigned l) const { return s_[l]; }

  [[nodiscard]] NodeId root() const { return {0, 0}; }
  [[nodiscard]] NodeId leaf(uint64_t x) const { return {levels_, x}; }
  [[nodiscard]] NodeId child(NodeId v, uint64_t j) const { return {v.level + 1, (v.index << lgd_) | j}; }
  [[nodiscard]] NodeId parent(NodeId v) const { return {v.level - 1, v.index >> lgd_}; }
  [[nodiscard]] uint64_t node_count(unsigned l) const { return uint64_t{1} << (lgd_ * l); }
  // Child of a level-l node holding symbol x.
  [[nodiscard]] uint64_t digit(unsigned l, uint64_t x) const {
    return (x >> (lgd_ * (levels_ - l - 1))) & low_mask(lgd_);
  }
  // Symbols [lo, hi] below v.
  [[nodiscard]] uint64_t range_lo(NodeId v) const { return v.index << (lgd_ * (levels_ - v.level)); }
  [[nodiscard]] uint64_t range_hi(NodeId v) const {
    return range_lo(v) + (uint64_t{1} << (lgd_ * (levels_ - v.level))) - 1;
  }

  // First level-order position of v's segment, and its length.
  [[nodiscard]] uint64_t start(NodeId v) const {
    return static_cast<uint64_t>(bounds_[v.level].select1(v.index + 1)) - v.index;
  }
  [[nodiscard]] uint64_t node_size(NodeId v) const;
  // Node of level l whose segment holds position p.
  [[nodiscard]] NodeId node_at(unsigned l, uint64_t p) const {
    const auto z = static_cast<uint64_t>(bounds_[l].select0(p + 1));
    return {l, bounds_[l].rank1_before(z) - 1};
  }

  // Deepest node whose symbol range holds both a and b; throws
  // std::out_of_range("leaf out of bounds") unless a, b < sigma().
  [[nodiscard]] NodeId lca_leaves(uint64_t a, uint64_t b) const;

  [[nodiscard]] bool has_values() const { return !a_.empty(); }
  [[nodiscard]] bool has_indexes() const { return !i_.empty(); }
  // A_l and I_l for l in [0, L].
  [[nodiscard]] const PackedSequence& values(unsigned l) const { return a_[l]; }
  [[nodiscard]] const PackedSequence& indexes(unsigned l) const { return i_[l]; }
  void discard_arrays() {
    a_.clear();
    i_.clear();
  }

  [[nodiscard]] uint64_t bits() const;

  template <class Ar>
  void serialize(Ar& ar) {
    ar(n_, sigma_, lgd_, levels_, s_, bounds_, a_, i_);
  }

 private:
  friend WaveletTree build_wavelet_plain(std::span<const uint64_t>, uint64_t, uint64_t, WaveletOptions);
  friend WaveletTree build_wavelet_packed(const PackedSequence&, uint64_t, uint64_t, WaveletOptions,
                                          const Config&);
  void init(uint64_t n, uint64_t sigma, uint64_t d);
  // Boundaries of every level from the symbol counts; returns the start of each leaf.
  std::vector<uint64_t> build_bounds(std::span<const uint64_t> a);

  uint64_t n_ = 0, sigma_ = 1;
  unsigned lgd_ = 1, levels_ = 1;
  std::vector<PackedSequence> s_;
  std::vector<RankSelectBitVector> bounds_;
  std::vector<PackedSequence> a_, i_;
};

// Both builders throw std::invalid_argument("invalid fanout") unless d is a power of
// two >= 2, and ("value overflow") if some A[i] >= sigma. The results are identical.
WaveletTree build_wavelet_plain(std::span<const uint64_t> a, uint64_t sigma, uint64_t d,
                                WaveletOptions opt = {});
WaveletTree build_wavelet_packed(const PackedSequence& a, uint64_t sigma, uint64_t d,
                                 WaveletOptions opt = {}, const Config& cfg = {});

}  // namespace orq
