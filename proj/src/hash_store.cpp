#include "vidseal/hash_store.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>

#include "vidseal/error.hpp"

namespace vidseal {

namespace {

constexpr std::uint8_t kMagic[4] = {'V', 'H', 'R', '1'};

class Writer {
 public:
  explicit Writer(std::vector<std::uint8_t>& out) : out_(out) {}

  template <typename T>
  void put(T value) {
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      out_.push_back(static_cast<std::uint8_t>(value >> (8 * i)));
    }
  }

  void put_bytes(std::span<const std::uint8_t> bytes) {
    out_.insert(out_.end(), bytes.begin(), bytes.end());
  }

 private:
  std::vector<std::uint8_t>& out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

  template <typename T>
  T get() {
    T value = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      value |= static_cast<T>(static_cast<T>(in_[pos_ + i]) << (8 * i));
    }
    pos_ += sizeof(T);
    return value;
  }

  HashValue get_hash() {
    HashValue::Bytes bytes{};
    std::copy_n(in_.begin() + static_cast<std::ptrdiff_t>(pos_), bytes.size(), bytes.begin());
    pos_ += bytes.size();
    return HashValue(bytes);
  }

 private:
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

void check_consistency(const HashRecord& r, std::uint32_t declared_blocks) {
  if (r.n < 2) throw Error(ErrorCode::InconsistentHeader, "grid side must be >= 2");
  if (r.tile_w == 0 || r.tile_h == 0) throw Error(ErrorCode::InconsistentHeader, "zero tile size");
  if (r.frame_count == 0) throw Error(ErrorCode::InconsistentHeader, "record has no frames");
  const std::size_t per_block = static_cast<std::size_t>(r.n) * r.n;
  const std::size_t expected = block_count(r.frame_count, r.n);
  if (declared_blocks != expected) {
    throw Error(ErrorCode::InconsistentHeader,
                "block count " + std::to_string(declared_blocks) + " does not match " +
                    std::to_string(r.frame_count) + " frames at n=" + std::to_string(r.n));
  }
  if (r.pad_count != expected * per_block - r.frame_count) {
    throw Error(ErrorCode::InconsistentHeader, "pad count does not match frame count");
  }
}

}  // namespace

std::vector<std::uint8_t> encode_record(const HashRecord& record) {
  std::vector<std::uint8_t> out;
  out.reserve(kRecordHeaderSize + record.blocks.size() * kRecordBlockSize);
  Writer w(out);
  w.put_bytes(kMagic);
  w.put(record.n);
  w.put(record.tile_w);
  w.put(record.tile_h);
  w.put(record.frame_count);
  w.put(record.pad_count);
  w.put(static_cast<std::uint32_t>(record.blocks.size()));
  for (const auto& block : record.blocks) {
    w.put_bytes(block.primary.bytes());
    w.put_bytes(block.corner.bytes());
  }
  return out;
}

HashRecord decode_record(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < sizeof(kMagic) || !std::equal(std::begin(kMagic), std::end(kMagic), bytes.begin())) {
    throw Error(ErrorCode::BadMagic, "not a VHR1 hash record");
  }
  if (bytes.size() < kRecordHeaderSize) throw Error(ErrorCode::TruncatedFile, "header is incomplete");

  Reader r(bytes.subspan(sizeof(kMagic)));
  HashRecord record;
  record.n = r.get<std::uint16_t>();
  record.tile_w = r.get<std::uint16_t>();
  record.tile_h = r.get<std::uint16_t>();
  record.frame_count = r.get<std::uint32_t>();
  record.pad_count = r.get<std::uint16_t>();
  const auto declared = r.get<std::uint32_t>();

  const std::size_t payload = bytes.size() - kRecordHeaderSize;
  if (payload < static_cast<std::size_t>(declared) * kRecordBlockSize) {
    throw Error(ErrorCode::TruncatedFile, "header declares " + std::to_string(declared) +
                                              " blocks but payload holds " +
                                              std::to_string(payload / kRecordBlockSize));
  }
  if (payload > static_cast<std::size_t>(declared) * kRecordBlockSize) {
    throw Error(ErrorCode::InconsistentHeader, "trailing bytes after last block");
  }
  check_consistency(record, declared);

  record.blocks.resize(declared);
  for (auto& block : record.blocks) {
    block.primary = r.get_hash();
    block.corner = r.get_hash();
  }
  return record;
}

void write_record(const HashRecord& record, const std::filesystem::path& path) {
  const auto bytes = encode_record(record);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

HashRecord read_record(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) throw Error(ErrorCode::FileNotFound, path.string());
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  const std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(in),
                                        std::istreambuf_iterator<char>()};
  return decode_record(bytes);
}

}  // namespace vidseal
