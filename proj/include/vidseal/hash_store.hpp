#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "vidseal/extended_frame.hpp"
#include "vidseal/robust_hash.hpp"

namespace vidseal {

struct BlockHashes {
  HashValue primary;
  HashValue corner;

  friend bool operator==(const BlockHashes&, const BlockHashes&) = default;
};

// Hashes of one reference video plus the tiling parameters used to make them.
struct HashRecord {
  std::uint16_t n = 8;
  std::uint16_t tile_w = 96;
  std::uint16_t tile_h = 54;
  std::uint32_t frame_count = 0;
  std::uint16_t pad_count = 0;
  std::vector<BlockHashes> blocks;

  TileSize tile() const { return {tile_w, tile_h}; }

  friend bool operator==(const HashRecord&, const HashRecord&) = default;
};

// .vhr layout, all integers little-endian:
//   "VHR1" | u16 n | u16 tile_w | u16 tile_h | u32 frame_count | u16 pad_count
//   | u32 block_count | block_count * (15-byte primary hash, 15-byte corner hash)
inline constexpr std::size_t kRecordHeaderSize = 20;
inline constexpr std::size_t kRecordBlockSize = 2 * HashValue::kBytes;

std::vector<std::uint8_t> encode_record(const HashRecord& record);

// Throws BadMagic, TruncatedFile, InconsistentHeader.
HashRecord decode_record(std::span<const std::uint8_t> bytes);

// Throws IoError.
void write_record(const HashRecord& record, const std::filesystem::path& path);

// Throws FileNotFound plus everything decode_record throws.
HashRecord read_record(const std::filesystem::path& path);

}  // namespace vidseal
