#pragma once

#include <bit>
#include <cstdint>
#include <limits>
#include <type_traits>
#include <utility>

namespace orq {

// Per-thread instrumentation. Builds and queries add to whichever thread runs them.
struct OpCounters {
  uint64_t word_ops = 0;
  uint64_t table_lookups = 0;
  uint64_t element_probes = 0;  // accessor calls and point() calls
  uint64_t escalations = 0;     // full-block queries issued by sorted reporting

  OpCounters operator-(const OpCounters& o) const {
    return {word_ops - o.word_ops, table_lookups - o.table_lookups,
            element_probes - o.element_probes, escalations - o.escalations};
  }
};

OpCounters& counters();

inline void count_ops(uint64_t k) { counters().word_ops += k; }

inline constexpr int64_t kNotFound = std::numeric_limits<int64_t>::min();

struct Point {
  uint64_t x = 0;
  uint64_t y = 0;
  bool operator==(const Point&) const = default;
  auto operator<=>(const Point&) const = default;
};

// Inclusive position interval; empty when lo > hi.
struct Range {
  int64_t lo = 1;
  int64_t hi = 0;
  [[nodiscard]] bool empty() const { return lo > hi; }
  [[nodiscard]] uint64_t size() const { return empty() ? 0 : static_cast<uint64_t>(hi - lo + 1); }
  bool operator==(const Range&) const = default;
};

// Bits needed to write any value in [0, max_value]; at least 1.
constexpr unsigned bits_for(uint64_t max_value) {
  return max_value == 0 ? 1u : static_cast<unsigned>(std::bit_width(max_value));
}

constexpr unsigned ceil_log2(uint64_t x) {
  return x <= 1 ? 0u : static_cast<unsigned>(std::bit_width(x - 1));
}

constexpr uint64_t low_mask(unsigned bits) {
  return bits >= 64 ? ~uint64_t{0} : (uint64_t{1} << bits) - 1;
}

// Non-owning reference to a callable uint64_t(uint64_t): the element accessor handed
// to indexing-model structures. Every call counts as one element probe.
class Accessor {
 public:
  template <class F,
            class = std::enable_if_t<!std::is_same_v<std::remove_cvref_t<F>, Accessor>>>
  Accessor(F&& f)  // NOLINT(google-explicit-constructor)
      : obj_(const_cast<void*>(static_cast<const void*>(&f))),
        call_([](void* o, uint64_t i) -> uint64_t {
          return (*static_cast<std::remove_reference_t<F>*>(o))(i);
        }) {}

  uint64_t operator()(uint64_t i) const {
    ++counters().element_probes;
    return call_(obj_, i);
  }

 private:
  void* obj_;
  uint64_t (*call_)(void*, uint64_t);
};

}  // namespace orq
