#include "orq/sorted_report.hpp"

#include <algorithm>

namespace orq {

SortedReportIndex build_general_sorted(const std::vector<uint64_t>& x, const Config& cfg) {
  const Config rc = cfg.resolved();
  const uint64_t n = x.size();
  LayerOptions opt;
  opt.fanout_bits = std::max(1u, rc.large_fanout_bits);
  opt.ball = LayerOptions::Ball::kLargeB;
  opt.samples = std::max<uint64_t>(rc.escalation, 1);
  opt.verbatim_sides = false;
  return SortedReportIndex(pack(x, bits_for(n ? n - 1 : 0)), std::max<uint64_t>(n, 1), opt, cfg);
}

}  // namespace orq
