#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "orq/common.hpp"
#include "orq/stream.hpp"

namespace orq {

// Segment tree answering "first index >= i whose value is >= a" (max mode) or
// "<= a" (min mode).
template <class T>
class ExtremumTree {
 public:
  ExtremumTree() = default;
  ExtremumTree(std::span<const T> values, bool max);

  [[nodiscard]] uint64_t size() const { return n_; }
  [[nodiscard]] int64_t first(uint64_t i, T a) const;
  [[nodiscard]] uint64_t bits() const { return 8 * sizeof(T) * t_.size(); }

  template <class Ar>
  void serialize(Ar& ar) {
    ar(n_, leaves_, max_, t_);
  }

 private:
  [[nodiscard]] bool hit(T v, T a) const { return max_ ? v >= a : v <= a; }
  uint64_t n_ = 0, leaves_ = 1;
  bool max_ = true;
  std::vector<T> t_;
};

extern template class ExtremumTree<uint32_t>;
extern template class ExtremumTree<uint64_t>;

// Reference-grade 2D structure over the sampled sets: a range tree over the distinct x
// values whose nodes keep their points sorted by y. Depth is lg of the number of
// distinct x values, which is small for every sampled set the engines build.
class RangeTreeBaseline {
 public:
  RangeTreeBaseline() = default;
  // Coordinates must be below 2^32.
  explicit RangeTreeBaseline(std::vector<Point> points);

  [[nodiscard]] uint64_t size() const { return n_; }
  template <class F>
  void report(uint64_t x1, uint64_t x2, uint64_t y1, uint64_t y2, F&& emit) const;
  // Lowest point of the rectangle; false if none.
  [[nodiscard]] bool successor(uint64_t x1, uint64_t x2, uint64_t y1, uint64_t y2, Point& out) const;
  [[nodiscard]] PointStream sorted(uint64_t x1, uint64_t x2, uint64_t y1, uint64_t y2) const;
  [[nodiscard]] uint64_t bits() const;

  template <class Ar>
  void serialize(Ar& ar) {
    ar(n_, xs_, prefix_, ys_, xi_);
  }

 private:
  struct Span {
    unsigned level;
    uint64_t lo, hi;  // slice of ys_[level], already cut to the y range
  };
  // Canonical node slices covering x in [x1, x2] and y in [y1, y2].
  [[nodiscard]] std::vector<Span> cover(uint64_t x1, uint64_t x2, uint64_t y1, uint64_t y2) const;

  uint64_t n_ = 0;
  std::vector<uint32_t> xs_;      // distinct x, ascending
  std::vector<uint32_t> prefix_;  // points with x below xs_[i]
  // Level k groups 2^k consecutive distinct x values; within a group points go by y.
  std::vector<std::vector<uint32_t>> ys_, xi_;
};

template <class F>
void RangeTreeBaseline::report(uint64_t x1, uint64_t x2, uint64_t y1, uint64_t y2, F&& emit) const {
  for (const Span& s : cover(x1, x2, y1, y2))
    for (uint64_t k = s.lo; k < s.hi; ++k) emit(Point{xs_[xi_[s.level][k]], ys_[s.level][k]});
}

}  // namespace orq
