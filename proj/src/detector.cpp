#include "vidseal/detector.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "vidseal/error.hpp"
#include "vidseal/frame_io.hpp"
#include "vidseal/parallel.hpp"

namespace vidseal {

std::string to_string(DetectionMode mode) {
  return mode == DetectionMode::Single ? "single" : "dual";
}

DetectionMode parse_mode(const std::string& text) {
  if (text == "single") return DetectionMode::Single;
  if (text == "dual") return DetectionMode::Dual;
  throw Error(ErrorCode::BadSpec, "mode must be 'single' or 'dual', got '" + text + "'");
}

HashRecord hash_video(std::span<const Frame> video, int n, TileSize tile, unsigned threads) {
  constexpr auto kMax16 = std::numeric_limits<std::uint16_t>::max();
  if (n > kMax16 || tile.width > kMax16 || tile.height > kMax16) {
    throw Error(ErrorCode::InvalidDimensions, "grid side and tile size must fit in 16 bits");
  }
  if (video.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw Error(ErrorCode::InvalidDimensions, "too many frames");
  }
  const auto blocks = partition(video, n);

  HashRecord record;
  record.n = static_cast<std::uint16_t>(n);
  record.tile_w = static_cast<std::uint16_t>(tile.width);
  record.tile_h = static_cast<std::uint16_t>(tile.height);
  record.frame_count = static_cast<std::uint32_t>(video.size());
  record.pad_count = static_cast<std::uint16_t>(blocks.back().pad_count);
  record.blocks.resize(blocks.size());

  parallel_for(blocks.size(), threads, [&](std::size_t b) {
    const auto tiles = resize_tiles(blocks[b], tile);
    record.blocks[b].primary = compute_hash(assemble_mosaic(tiles, n, GridOrdering::Primary));
    record.blocks[b].corner = compute_hash(assemble_mosaic(tiles, n, GridOrdering::CornerToCenter));
  });
  return record;
}

int block_score(const BlockVerdict& verdict, DetectionMode mode) {
  return mode == DetectionMode::Single ? verdict.dist_primary : verdict.dist_combined;
}

DetectionReport compare(const HashRecord& reference, const HashRecord& query, int d,
                        DetectionMode mode) {
  if (reference.n != query.n || reference.tile_w != query.tile_w ||
      reference.tile_h != query.tile_h) {
    throw Error(ErrorCode::ConfigMismatch,
                "reference (n=" + std::to_string(reference.n) + ", tile " +
                    std::to_string(reference.tile_w) + "x" + std::to_string(reference.tile_h) +
                    ") and query (n=" + std::to_string(query.n) + ", tile " +
                    std::to_string(query.tile_w) + "x" + std::to_string(query.tile_h) +
                    ") were hashed differently");
  }

  DetectionReport report;
  report.n = reference.n;
  report.d = d;
  report.mode = mode;
  report.length_mismatch = reference.blocks.size() != query.blocks.size();

  const std::size_t shared = std::min(reference.blocks.size(), query.blocks.size());
  const std::size_t total = std::max(reference.blocks.size(), query.blocks.size());
  report.verdicts.resize(total);
  for (std::size_t i = 0; i < total; ++i) {
    BlockVerdict& v = report.verdicts[i];
    v.block_index = i;
    if (i < shared) {
      v.dist_primary = hamming_distance(reference.blocks[i].primary, query.blocks[i].primary);
      v.dist_corner = hamming_distance(reference.blocks[i].corner, query.blocks[i].corner);
    } else {
      v.dist_primary = v.dist_corner = kSurplusDistance;
    }
    v.dist_combined = std::max(v.dist_primary, v.dist_corner);
    v.operated = i >= shared || block_score(v, mode) >= d;
    report.video_operated = report.video_operated || v.operated;
  }
  report.video_operated = report.video_operated || report.length_mismatch;
  return report;
}

DetectionReport detect(const std::filesystem::path& reference_dir,
                       const std::filesystem::path& query_dir, int n, int d, DetectionMode mode,
                       TileSize tile, unsigned threads) {
  const auto reference = load_frame_sequence(reference_dir);
  const auto ref_record = hash_video(reference, n, tile, threads);
  const auto query = load_frame_sequence(query_dir);
  return compare(ref_record, hash_video(query, n, tile, threads), d, mode);
}

std::string report_to_json(const DetectionReport& report) {
  nlohmann::ordered_json j;
  j["n"] = report.n;
  j["d"] = report.d;
  j["mode"] = to_string(report.mode);
  auto verdicts = nlohmann::ordered_json::array();
  for (const auto& v : report.verdicts) {
    verdicts.push_back({{"block_index", v.block_index},
                        {"dist_primary", v.dist_primary},
                        {"dist_corner", v.dist_corner},
                        {"dist_combined", v.dist_combined},
                        {"operated", v.operated}});
  }
  j["verdicts"] = std::move(verdicts);
  j["video_operated"] = report.video_operated;
  j["length_mismatch"] = report.length_mismatch;
  return j.dump(2) + "\n";
}

std::string report_to_csv(const DetectionReport& report) {
  std::ostringstream out;
  out << "block_index,dist_primary,dist_corner,dist_combined,operated\n";
  for (const auto& v : report.verdicts) {
    out << v.block_index << ',' << v.dist_primary << ',' << v.dist_corner << ','
        << v.dist_combined << ',' << (v.operated ? 1 : 0) << '\n';
  }
  return out.str();
}

}  // namespace vidseal
