#include "vidseal/run_config.hpp"

#include <cstdlib>
#include <fstream>
#include <regex>

#include "json.hpp"
#include "vidseal/error.hpp"

namespace vidseal {

void ConfigOverrides::apply_to(RunConfig& config) const {
  if (n) config.n = *n;
  if (d) config.d = *d;
  if (mode) config.mode = *mode;
  if (tile) config.tile = *tile;
  if (seed) config.seed = *seed;
  if (threads) config.threads = *threads;
}

ConfigOverrides load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::FileNotFound, path.string());
  ConfigOverrides out;
  try {
    const auto j = nlohmann::json::parse(in);
    if (!j.is_object()) throw Error(ErrorCode::BadSpec, "config must be a JSON object");
    if (j.contains("n")) out.n = j.at("n").get<int>();
    if (j.contains("d")) out.d = j.at("d").get<int>();
    if (j.contains("mode")) out.mode = parse_mode(j.at("mode").get<std::string>());
    if (j.contains("tile")) out.tile = parse_tile(j.at("tile").get<std::string>());
    if (j.contains("seed")) out.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("threads")) out.threads = j.at("threads").get<unsigned>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::BadSpec, path.string() + ": " + e.what());
  }
  return out;
}

std::string config_to_json(const RunConfig& config) {
  nlohmann::ordered_json j;
  j["n"] = config.n;
  j["d"] = config.d;
  j["mode"] = to_string(config.mode);
  j["tile"] = to_string(config.tile);
  j["seed"] = config.seed;
  return j.dump(2) + "\n";
}

TileSize parse_tile(const std::string& text) {
  static const std::regex kPattern(R"((\d{1,5})x(\d{1,5}))");
  std::smatch m;
  if (!std::regex_match(text, m, kPattern)) {
    throw Error(ErrorCode::BadSpec, "tile must look like WxH, got '" + text + "'");
  }
  return {std::stoi(m[1].str()), std::stoi(m[2].str())};
}

std::string to_string(TileSize tile) {
  return std::to_string(tile.width) + "x" + std::to_string(tile.height);
}

std::optional<unsigned> threads_from_env() {
  const char* value = std::getenv("VIDSEAL_THREADS");
  if (!value || !*value) return std::nullopt;
  char* end = nullptr;
  const unsigned long parsed = std::strtoul(value, &end, 10);
  if (*end != '\0') return std::nullopt;
  return static_cast<unsigned>(parsed);
}

}  // namespace vidseal
