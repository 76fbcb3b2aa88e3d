#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace orq {

inline constexpr uint64_t kDefaultTableCap = uint64_t{1} << 25;

// Build parameters. Everything except lg_cap and the table cap is derived from
// the capacity N_cap = 2^lg_cap unless overridden; a zero field means "derive".
struct Config {
  unsigned lg_cap = 32;
  uint64_t table_cap_bits = kDefaultTableCap;
  unsigned inv_epsilon = 2;  // 1/epsilon used by level coloring

  unsigned large_fanout_bits = 0;     // lg of the 2^ceil(sqrt lg N) fanout
  unsigned small_fanout_bits = 0;     // lg of the lg^{1/4} N fanout
  uint64_t narrow_block = 0;          // rows per block in narrow grids, 2^{2 ceil(sqrt lg N)}
  uint64_t small_alphabet_max = 0;    // largest sigma served by the small-alphabet rank index
  uint64_t chunked_alphabet_max = 0;  // largest sigma served by the chunked partial-rank index
  uint64_t three_sided_block = 0;     // (lg N)^3
  uint64_t three_sided_subblock = 0;  // ceil((lg N)^{3/4})
  uint64_t tiny_narrow = 0;           // small-narrow grids below this size use the block path
  uint64_t escalation = 0;            // ceil(lg lg N), floor 2
  uint64_t pred_block = 0;            // block length of the indexing pred/succ structure
  uint64_t patricia_block = 0;        // block length of the packed pred/succ structure
  unsigned packed_width_max = 0;      // widest element the packed rmq accepts

  // Copy with every derived field filled in.
  [[nodiscard]] Config resolved() const;

  // Set a field from KEY=VAL text; throws std::invalid_argument on unknown keys.
  void set(const std::string& key, const std::string& value);
  [[nodiscard]] std::map<std::string, uint64_t> to_map() const;
  static Config from_map(const std::map<std::string, uint64_t>& m);

  bool operator==(const Config&) const = default;
};

// Elements per table block for the given element width: floor(lg N / (2 width)), at least 1.
[[nodiscard]] unsigned block_elems(const Config& cfg, unsigned width);

}  // namespace orq
