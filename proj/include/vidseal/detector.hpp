#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "vidseal/extended_frame.hpp"
#include "vidseal/hash_store.hpp"

namespace vidseal {

// Single: the frame-order layout only. Dual: max over both layouts.
enum class DetectionMode { Single, Dual };

std::string to_string(DetectionMode mode);
// Throws BadSpec for anything other than "single" / "dual".
DetectionMode parse_mode(const std::string& text);

struct BlockVerdict {
  std::size_t block_index = 0;
  int dist_primary = 0;
  int dist_corner = 0;
  int dist_combined = 0;
  bool operated = false;

  friend bool operator==(const BlockVerdict&, const BlockVerdict&) = default;
};

struct DetectionReport {
  int n = 8;
  int d = 23;
  DetectionMode mode = DetectionMode::Dual;
  std::vector<BlockVerdict> verdicts;
  bool video_operated = false;
  bool length_mismatch = false;

  friend bool operator==(const DetectionReport&, const DetectionReport&) = default;
};

// Distance assigned to blocks that exist on one side only.
inline constexpr int kSurplusDistance = HashValue::kBits;

// Hashes both layouts of every block. threads = 0 uses all cores; the result
// does not depend on the thread count.
HashRecord hash_video(std::span<const Frame> video, int n, TileSize tile, unsigned threads = 0);

// A block is operated iff its distance is >= d. Throws
// ConfigMismatch if n or tile size differ.
DetectionReport compare(const HashRecord& reference, const HashRecord& query, int d,
                        DetectionMode mode);

// Score used for thresholding: dist_primary in single mode, dist_combined in dual.
int block_score(const BlockVerdict& verdict, DetectionMode mode);

DetectionReport detect(const std::filesystem::path& reference_dir,
                       const std::filesystem::path& query_dir, int n, int d, DetectionMode mode,
                       TileSize tile = {}, unsigned threads = 0);

std::string report_to_json(const DetectionReport& report);
// Header "block_index,dist_primary,dist_corner,dist_combined,operated".
std::string report_to_csv(const DetectionReport& report);

}  // namespace vidseal
