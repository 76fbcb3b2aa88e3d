#pragma once

#include "orq/range_successor.hpp"
#include "orq/stream.hpp"

namespace orq {

// Sorted range reporting reuses the successor layers with escalation-sized samples:
// each three-sided block samples its `escalation` extreme values, each medium-narrow
// block keeps the `escalation` lowest points per symbol, and the balls take the
// constant-point coloring.
using SortedReportIndex = SuccLayers<MediumNarrowIndex>;
SortedReportIndex build_general_sorted(const std::vector<uint64_t>& x, const Config& cfg = {});

}  // namespace orq
