#include "orq/index_file.hpp"

#include <zlib.h>

#include <cereal/archives/portable_binary.hpp>
#include <cereal/types/map.hpp>
#include <cereal/types/string.hpp>
#include <cereal/types/vector.hpp>
#include <cstring>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace orq {

namespace {

constexpr char kMagic[4] = {'O', 'R', 'Q', '1'};

uint32_t crc(const char* p, uint64_t n) {
  uLong c = crc32(0L, Z_NULL, 0);
  while (n > 0) {
    const auto chunk = static_cast<uInt>(std::min<uint64_t>(n, uint64_t{1} << 30));
    c = crc32(c, reinterpret_cast<const Bytef*>(p), chunk);
    p += chunk;
    n -= chunk;
  }
  return static_cast<uint32_t>(c);
}

template <class T>
void put_le(std::ostream& out, T v) {
  char b[sizeof(T)];
  for (size_t i = 0; i < sizeof(T); ++i) b[i] = static_cast<char>(v >> (8 * i));
  out.write(b, sizeof(T));
}

template <class T>
bool get_le(std::istream& in, T& v) {
  unsigned char b[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(b), sizeof(T))) return false;
  v = 0;
  for (size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(b[i]) << (8 * i);
  return true;
}

template <class T>
void put_section(std::ostream& out, SectionTag tag, const T& obj) {
  std::ostringstream buf(std::ios::binary);
  {
    cereal::PortableBinaryOutputArchive ar(buf);
    ar(obj);
  }
  const std::string payload = std::move(buf).str();
  put_le<uint32_t>(out, static_cast<uint32_t>(tag));
  put_le<uint64_t>(out, payload.size());
  put_le<uint32_t>(out, crc(payload.data(), payload.size()));
  out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
}

// Read-only stream over a buffer, without copying it.
struct ViewBuf : std::streambuf {
  ViewBuf(char* p, size_t n) { setg(p, p, p + n); }
};

template <class T>
void parse(std::string& payload, T& obj) {
  ViewBuf vb(payload.data(), payload.size());
  std::istream in(&vb);
  try {
    cereal::PortableBinaryInputArchive ar(in);
    ar(obj);
  } catch (const cereal::Exception& e) {
    throw IndexFormatError(std::string("malformed section: ") + e.what());
  }
}

template <class Index>
void save_typed(std::ostream& out, const Index& idx) {
  put_section(out, SectionTag::kConfig, idx.config().to_map());
  put_section(out, SectionTag::kRankMap, idx.map());
  put_section(out, SectionTag::kEngine, idx.engine());
}

template <class Index>
Index load_typed(std::map<uint32_t, std::string>& sections) {
  auto need = [&](SectionTag t) -> std::string& {
    auto it = sections.find(static_cast<uint32_t>(t));
    if (it == sections.end()) throw IndexFormatError("missing section " + std::to_string(uint32_t(t)));
    return it->second;
  };
  std::map<std::string, uint64_t> cfg;
  parse(need(SectionTag::kConfig), cfg);
  RankSpaceMap map;
  parse(need(SectionTag::kRankMap), map);
  std::decay_t<decltype(std::declval<Index>().engine())> engine;
  parse(need(SectionTag::kEngine), engine);
  if (engine.size() != map.size()) throw IndexFormatError("section sizes disagree");
  return Index(std::move(map), std::move(engine), Config::from_map(cfg));
}

}  // namespace

IndexType index_type(const AnyIndex& idx) {
  return std::visit([](const auto& i) { return std::decay_t<decltype(i)>::kType; }, idx);
}

void save_index(std::ostream& out, const AnyIndex& idx) {
  out.write(kMagic, 4);
  put_le<uint32_t>(out, kIndexFormatVersion);
  put_le<uint8_t>(out, static_cast<uint8_t>(index_type(idx)));
  std::visit([&](const auto& i) { save_typed(out, i); }, idx);
  if (!out) throw std::runtime_error("write failed");
}

void save_index(const std::string& path, const AnyIndex& idx) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  save_index(out, idx);
}

AnyIndex load_index(std::istream& in) {
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) throw IndexFormatError("not an index file");
  uint32_t version = 0;
  uint8_t type = 0;
  if (!get_le(in, version) || !get_le(in, type)) throw IndexFormatError("truncated header");
  if (version != kIndexFormatVersion) throw IndexFormatError("unsupported version " + std::to_string(version));

  std::map<uint32_t, std::string> sections;
  for (;;) {
    uint32_t tag = 0, sum = 0;
    uint64_t len = 0;
    if (!get_le(in, tag)) break;
    if (!get_le(in, len) || !get_le(in, sum)) throw IndexFormatError("truncated section header");
    const bool known = tag >= 1 && tag <= 3;
    if (!known) {
      if (!in.ignore(static_cast<std::streamsize>(len)) || uint64_t(in.gcount()) != len)
        throw IndexFormatError("truncated section");
      continue;
    }
    std::string payload(len, '\0');
    if (!in.read(payload.data(), static_cast<std::streamsize>(len))) throw IndexFormatError("truncated section");
    if (crc(payload.data(), len) != sum)
      throw IndexFormatError("checksum mismatch in section " + std::to_string(tag));
    sections[tag] = std::move(payload);
  }
  switch (static_cast<IndexType>(type)) {
    case IndexType::kReport:
      return load_typed<ReportIndex>(sections);
    case IndexType::kSucc:
      return load_typed<SuccessorIndex>(sections);
    case IndexType::kSorted:
      return load_typed<SortedIndex>(sections);
  }
  throw IndexFormatError("unknown index type " + std::to_string(type));
}

AnyIndex load_index(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return load_index(in);
}

}  // namespace orq
