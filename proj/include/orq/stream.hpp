#pragma once

#include <functional>
#include <vector>

#include "orq/common.hpp"

namespace orq {

// Pull-based point stream: each call writes the next point and returns true, or
// returns false once exhausted. Streams in this library are strictly increasing in y.
using PointStream = std::function<bool(Point&)>;

inline PointStream empty_stream() {
  return [](Point&) { return false; };
}
PointStream single_stream(Point p);
// Lazily merges streams by y with a binary heap. Pulls from an input only when its
// current head has been emitted. Throws std::logic_error("stream order violation")
// if an input fails to increase strictly in y.
PointStream merge_sorted_streams(std::vector<PointStream> streams);
// Drains up to limit points.
std::vector<Point> take(PointStream& s, uint64_t limit = ~uint64_t{0});

}  // namespace orq
