#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "vidseal/detector.hpp"
#include "vidseal/extended_frame.hpp"

namespace vidseal {

inline constexpr int kDefaultGridSide = 8;
inline constexpr int kDefaultThreshold = 23;

struct RunConfig {
  int n = kDefaultGridSide;
  int d = kDefaultThreshold;
  DetectionMode mode = DetectionMode::Dual;
  TileSize tile;
  std::uint64_t seed = 0;
  unsigned threads = 0;  // 0: all cores
};

// Fields present in a JSON config file; absent fields keep their defaults.
// Keys: n, d, mode ("single"|"dual"), tile ("WxH"), seed, threads.
struct ConfigOverrides {
  std::optional<int> n;
  std::optional<int> d;
  std::optional<DetectionMode> mode;
  std::optional<TileSize> tile;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;

  void apply_to(RunConfig& config) const;
};

// Throws FileNotFound or BadSpec.
ConfigOverrides load_config_file(const std::filesystem::path& path);
std::string config_to_json(const RunConfig& config);

// "96x54" -> {96, 54}. Throws BadSpec.
TileSize parse_tile(const std::string& text);
std::string to_string(TileSize tile);

// VIDSEAL_THREADS, if set to a non-negative integer.
std::optional<unsigned> threads_from_env();

}  // namespace vidseal
