#pragma once

// Index file layout (little-endian):
//   "ORQ1" | u32 version | u8 type tag
//   then sections: u32 tag | u64 length | u32 crc32 | payload
// Sections hold the configuration, the rank-space map and the engine. Readers skip
// tags they do not know.

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <variant>

#include "orq/orq.hpp"

namespace orq {

inline constexpr uint32_t kIndexFormatVersion = 1;

enum class SectionTag : uint32_t { kConfig = 1, kRankMap = 2, kEngine = 3 };

// Bad magic, version, checksum, truncation or a missing section.
class IndexFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using AnyIndex = std::variant<ReportIndex, SuccessorIndex, SortedIndex>;

IndexType index_type(const AnyIndex& idx);

void save_index(std::ostream& out, const AnyIndex& idx);
void save_index(const std::string& path, const AnyIndex& idx);
AnyIndex load_index(std::istream& in);
AnyIndex load_index(const std::string& path);

}  // namespace orq
