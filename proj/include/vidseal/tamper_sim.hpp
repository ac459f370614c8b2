#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "vidseal/imaging.hpp"

namespace vidseal {

enum class TamperOp { Insert, Delete, Reorder, Replace };

std::string to_string(TamperOp op);
TamperOp parse_tamper_op(const std::string& text);

// One inter-frame operation.
//   insert:  positions are indices in the OUTPUT video that receive donor
//            frames donor[donor_start], donor[donor_start + 1], ...
//   delete:  positions are input indices to remove.
//   reorder: frames at the positions are cyclically permuted by a seeded
//            shuffle, so every listed frame moves.
//   replace: positions are input indices overwritten by donor frames.
struct TamperSpec {
  TamperOp op = TamperOp::Replace;
  std::vector<std::size_t> positions;
  std::optional<std::string> donor;  // donor identifier, e.g. a frame directory
  std::size_t donor_start = 0;
  std::uint64_t seed = 0;
};

struct GroundTruth {
  std::vector<bool> frame_flags;

  // Block b is positive iff any real frame in it is flagged.
  std::vector<bool> block_labels(int n) const;
  std::size_t flagged_count() const;
};

struct TamperResult {
  std::vector<Frame> video;
  GroundTruth truth;
};

// Applies one operation to an untouched video. Throws OutOfBounds, MissingDonor
// (insert/replace without donor frames), BadSpec (duplicate positions),
// HeterogeneousDimensions (donor size differs), EmptyVideo (everything deleted).
TamperResult apply_tamper(std::span<const Frame> video, const TamperSpec& spec,
                          std::span<const Frame> donor = {});

// Same, carrying the flags of an earlier operation along with their frames.
TamperResult apply_tamper(const TamperResult& input, const TamperSpec& spec,
                          std::span<const Frame> donor = {});

// Baseline JPEG round trip of every frame. quality in 1..100 (else BadSpec).
std::vector<Frame> distort_jpeg(std::span<const Frame> video, int quality, unsigned threads = 0);

// Bilinear resize of every frame to floor(w*scale) x floor(h*scale).
// Throws BadSpec unless 0 < scale <= 1, DegenerateOutput if a side becomes 0.
std::vector<Frame> distort_resize(std::span<const Frame> video, double scale,
                                  unsigned threads = 0);

// Content-preserving processing applied after any tampering: resize first,
// then JPEG, the way an upload pipeline would.
struct Distortion {
  std::optional<int> jpeg_quality;
  double scale = 1.0;

  static Distortion twitter_like() { return {75, 1.0}; }
  static Distortion instagram_like() { return {75, 0.9}; }
};

std::vector<Frame> apply_distortion(std::span<const Frame> video, const Distortion& distortion,
                                    unsigned threads = 0);

enum class SynthKind { Solid, GradientMotion, NoiseTexture };

SynthKind parse_synth_kind(const std::string& text);

// Deterministic per seed. Solid yields white frames; GradientMotion drifts
// colored plane waves and a blob so that every frame is distinct;
// NoiseTexture draws independent smooth noise per frame.
std::vector<Frame> synth_video(SynthKind kind, std::size_t frames, int width, int height,
                               std::uint64_t seed);

nlohmann::json spec_to_json(const TamperSpec& spec);
// Accepts {"op", "positions" | "range": [first, last_exclusive], "donor",
// "donor_start", "seed"}. Throws BadSpec.
TamperSpec spec_from_json(const nlohmann::json& j);

// {"frame_flags": [...], "block_labels": [...], "spec": {...}}
nlohmann::json truth_to_json(const GroundTruth& truth, int n, const nlohmann::json& spec);
void write_truth(const std::filesystem::path& path, const GroundTruth& truth, int n,
                 const nlohmann::json& spec);
// Reads frame_flags; block labels are recomputed by callers for their n.
GroundTruth read_truth(const std::filesystem::path& path);

}  // namespace vidseal
