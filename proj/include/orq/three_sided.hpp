#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "orq/baseline.hpp"
#include "orq/config.hpp"
#include "orq/packed.hpp"
#include "orq/pred_succ.hpp"

namespace orq {

using PosStream = std::function<bool(uint64_t&)>;
using ValueFn = std::function<uint64_t(uint64_t)>;

// Three-sided next-point and sorted queries over a value sequence V: positions p of
// [s, e] with V[p] >= a (or V[p] <= b), smallest first.
//
// Wide values are split into blocks. Each block keeps in-block ranks, its sorting
// permutation and an indexing pred/succ over its sorted values, so a query reads V
// only to turn the bound into a rank threshold. The k largest and k smallest values
// of each block are sampled explicitly; a sample search finds the middle blocks that
// hold an answer. Narrow values are kept verbatim and never read through V.
class ThreeSidedIndex {
 public:
  ThreeSidedIndex() = default;
  // samples: values sampled per block and direction (1 for next-point queries).
  // Wide mode needs distinct values (std::invalid_argument("duplicates not allowed")).
  ThreeSidedIndex(const PackedSequence& v, uint64_t samples, bool verbatim, const Config& cfg = {});

  [[nodiscard]] uint64_t size() const { return n_; }
  [[nodiscard]] bool verbatim() const { return verbatim_; }
  [[nodiscard]] uint64_t block() const { return block_; }

  // value(p) must return V[p]; it is only called in wide mode, at most four times per
  // block touched.
  [[nodiscard]] int64_t next_ge(const ValueFn& value, uint64_t s, uint64_t e, uint64_t a) const;
  [[nodiscard]] int64_t next_le(const ValueFn& value, uint64_t s, uint64_t e, uint64_t b) const;
  // The stream keeps references to this index and a copy of value.
  [[nodiscard]] PosStream sorted_ge(ValueFn value, uint64_t s, uint64_t e, uint64_t a) const;
  [[nodiscard]] PosStream sorted_le(ValueFn value, uint64_t s, uint64_t e, uint64_t b) const;

  [[nodiscard]] uint64_t bits() const;

  template <class Ar>
  void serialize(Ar& ar) {
    ar(n_, k_, block_, sub_, per_block_, verbatim_, ranks_, perm_, smax_, smin_, ps_, hi_pos_, hi_val_,
       lo_pos_, lo_val_, hi_tree_, lo_tree_);
  }

 private:
  struct Threshold {
    bool any = false;
    uint64_t r = 0;
  };
  [[nodiscard]] Threshold threshold(const ValueFn& value, uint64_t blk, uint64_t x, bool ge) const;
  // First position of [p, q] (inside one block) whose rank passes r.
  [[nodiscard]] int64_t scan(uint64_t p, uint64_t q, uint64_t r, bool ge) const;
  [[nodiscard]] int64_t in_block(const ValueFn& value, uint64_t blk, uint64_t p, uint64_t q, uint64_t x,
                                 bool ge) const;
  [[nodiscard]] int64_t next(const ValueFn& value, uint64_t s, uint64_t e, uint64_t x, bool ge) const;
  [[nodiscard]] PosStream block_stream(const ValueFn& value, uint64_t blk, uint64_t p, uint64_t q, uint64_t x,
                                       bool ge) const;
  [[nodiscard]] PosStream sorted(ValueFn value, uint64_t s, uint64_t e, uint64_t x, bool ge) const;
  [[nodiscard]] uint64_t sub_id(uint64_t p) const { return (p / block_) * per_block_ + (p % block_) / sub_; }
  [[nodiscard]] uint64_t sub_start(uint64_t id) const {
    return (id / per_block_) * block_ + (id % per_block_) * sub_;
  }
  [[nodiscard]] uint64_t block_end(uint64_t blk) const { return std::min(n_, (blk + 1) * block_) - 1; }

  uint64_t n_ = 0, k_ = 1, block_ = 1, sub_ = 1, per_block_ = 1;
  bool verbatim_ = true;
  PackedSequence ranks_;  // in-block ranks, or the values themselves when verbatim
  PackedSequence perm_;   // per block: local positions in (value, position) order
  ExtremumTree<uint32_t> smax_, smin_;  // over sub-block rank extrema
  std::vector<PredSuccIndex> ps_;       // per block, over its sorted values
  std::vector<uint64_t> hi_pos_, hi_val_, lo_pos_, lo_val_;  // samples by position
  ExtremumTree<uint64_t> hi_tree_, lo_tree_;
};

}  // namespace orq
