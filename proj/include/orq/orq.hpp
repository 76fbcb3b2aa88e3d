#pragma once

// Top-level API over arbitrary point sets. Points are reduced to rank space, where both
// coordinates form a permutation of [0, n), and answers are mapped back.

#include <cstdint>
#include <optional>
#include <vector>

#include "orq/config.hpp"
#include "orq/range_report.hpp"
#include "orq/range_successor.hpp"
#include "orq/sorted_report.hpp"
#include "orq/stream.hpp"

namespace orq {

// Ties in x are broken by y and ties in y by x, so every point gets distinct ranks.
class RankSpaceMap {
 public:
  RankSpaceMap() = default;
  // x_of_y[r] is the x rank of the point with y rank r.
  // Throws std::invalid_argument("duplicate point").
  RankSpaceMap(const std::vector<Point>& pts, std::vector<uint64_t>& x_of_y);

  [[nodiscard]] uint64_t size() const { return xs_.size(); }
  // Rank bounds of the points inside [x1, x2] x [y1, y2]; false when none can be.
  [[nodiscard]] bool to_rank(uint64_t x1, uint64_t x2, uint64_t y1, uint64_t y2, uint64_t& a, uint64_t& b,
                             uint64_t& c, uint64_t& d) const;
  [[nodiscard]] Point original(const Point& r) const { return {xs_[r.x], ys_[r.y]}; }

  bool operator==(const RankSpaceMap&) const = default;

  template <class Ar>
  void serialize(Ar& ar) {
    ar(xs_, ys_);
  }

 private:
  std::vector<uint64_t> xs_;  // original x by x rank (nondecreasing)
  std::vector<uint64_t> ys_;  // original y by y rank
};

enum class IndexType : uint8_t { kReport = 1, kSucc = 2, kSorted = 3 };

const char* type_name(IndexType t);
// Accepts "report", "succ" and "sorted"; throws std::invalid_argument otherwise.
IndexType parse_type(const std::string& s);

template <class Engine>
class MappedIndex {
 public:
  MappedIndex() = default;
  MappedIndex(RankSpaceMap map, Engine engine, const Config& cfg)
      : map_(std::move(map)), engine_(std::move(engine)), cfg_(cfg) {}

  [[nodiscard]] uint64_t size() const { return map_.size(); }
  [[nodiscard]] const RankSpaceMap& map() const { return map_; }
  [[nodiscard]] const Engine& engine() const { return engine_; }
  [[nodiscard]] const Config& config() const { return cfg_; }

 protected:
  RankSpaceMap map_;
  Engine engine_;
  Config cfg_;
};

class ReportIndex : public MappedIndex<GeneralReportIndex> {
 public:
  static constexpr IndexType kType = IndexType::kReport;
  using MappedIndex::MappedIndex;
  // Points of [x1, x2] x [y1, y2] in original coordinates, in no particular order.
  [[nodiscard]] std::vector<Point> report(uint64_t x1, uint64_t x2, uint64_t y1, uint64_t y2) const;
};

class SuccessorIndex : public MappedIndex<GeneralSuccIndex> {
 public:
  static constexpr IndexType kType = IndexType::kSucc;
  using MappedIndex::MappedIndex;
  // The point of [x1, x2] x [y1, y2] with the smallest y.
  [[nodiscard]] std::optional<Point> successor(uint64_t x1, uint64_t x2, uint64_t y1, uint64_t y2) const;
};

class SortedIndex : public MappedIndex<SortedReportIndex> {
 public:
  static constexpr IndexType kType = IndexType::kSorted;
  using MappedIndex::MappedIndex;
  // Points of the rectangle by increasing y; the stream borrows this index.
  [[nodiscard]] PointStream sorted(uint64_t x1, uint64_t x2, uint64_t y1, uint64_t y2) const;
  [[nodiscard]] std::vector<Point> sorted(uint64_t x1, uint64_t x2, uint64_t y1, uint64_t y2,
                                          uint64_t limit) const;
};

// Each throws std::invalid_argument("duplicate point") on repeated points.
ReportIndex build_report(const std::vector<Point>& pts, const Config& cfg = {});
SuccessorIndex build_successor(const std::vector<Point>& pts, const Config& cfg = {});
SortedIndex build_sorted_report(const std::vector<Point>& pts, const Config& cfg = {});

}  // namespace orq
