#include "vidseal/tamper_sim.hpp"

#include <algorithm>
#include <cmath>
#include <array>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <set>

#include "vidseal/error.hpp"
#include "vidseal/extended_frame.hpp"
#include "vidseal/jpeg_codec.hpp"
#include "vidseal/parallel.hpp"

namespace vidseal {

namespace {

// std::uniform_*_distribution is implementation-defined; these are not.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double uniform(std::mt19937_64& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

std::vector<std::size_t> sorted_unique(const std::vector<std::size_t>& positions) {
  std::vector<std::size_t> out = positions;
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) {
    throw Error(ErrorCode::BadSpec, "tamper positions must be distinct");
  }
  return out;
}

void check_bounds(const std::vector<std::size_t>& sorted, std::size_t limit) {
  if (!sorted.empty() && sorted.back() >= limit) {
    throw Error(ErrorCode::OutOfBounds, "position " + std::to_string(sorted.back()) +
                                            " is outside a video of " + std::to_string(limit) +
                                            " frames");
  }
}

std::span<const Frame> donor_frames(const TamperSpec& spec, std::span<const Frame> donor,
                                    const Frame& like, std::size_t needed) {
  if (donor.empty()) {
    throw Error(ErrorCode::MissingDonor, to_string(spec.op) + " requires donor frames");
  }
  if (spec.donor_start + needed > donor.size()) {
    throw Error(ErrorCode::OutOfBounds, "donor has " + std::to_string(donor.size()) +
                                            " frames, need " +
                                            std::to_string(spec.donor_start + needed));
  }
  auto used = donor.subspan(spec.donor_start, needed);
  for (const Frame& f : used) {
    if (!f.same_size(like)) {
      throw Error(ErrorCode::HeterogeneousDimensions, "donor frames must match the video size");
    }
  }
  return used;
}

}  // namespace

std::string to_string(TamperOp op) {
  switch (op) {
    case TamperOp::Insert: return "insert";
    case TamperOp::Delete: return "delete";
    case TamperOp::Reorder: return "reorder";
    case TamperOp::Replace: return "replace";
  }
  return "unknown";
}

TamperOp parse_tamper_op(const std::string& text) {
  if (text == "insert") return TamperOp::Insert;
  if (text == "delete") return TamperOp::Delete;
  if (text == "reorder") return TamperOp::Reorder;
  if (text == "replace") return TamperOp::Replace;
  throw Error(ErrorCode::BadSpec, "unknown tamper op '" + text + "'");
}

std::vector<bool> GroundTruth::block_labels(int n) const {
  const std::size_t per_block = static_cast<std::size_t>(n) * n;
  std::vector<bool> labels(block_count(frame_flags.size(), n), false);
  for (std::size_t i = 0; i < frame_flags.size(); ++i) {
    if (frame_flags[i]) labels[i / per_block] = true;
  }
  return labels;
}

std::size_t GroundTruth::flagged_count() const {
  return static_cast<std::size_t>(std::count(frame_flags.begin(), frame_flags.end(), true));
}

TamperResult apply_tamper(std::span<const Frame> video, const TamperSpec& spec,
                          std::span<const Frame> donor) {
  TamperResult input{{video.begin(), video.end()}, {std::vector<bool>(video.size(), false)}};
  return apply_tamper(input, spec, donor);
}

TamperResult apply_tamper(const TamperResult& input, const TamperSpec& spec,
                          std::span<const Frame> donor) {
  const auto& frames = input.video;
  const auto& flags = input.truth.frame_flags;
  if (frames.empty()) throw Error(ErrorCode::EmptyVideo, "cannot tamper an empty video");
  if (flags.size() != frames.size()) {
    throw Error(ErrorCode::BadSpec, "ground truth length differs from video length");
  }
  const auto positions = sorted_unique(spec.positions);
  const std::size_t length = frames.size();

  TamperResult out;
  switch (spec.op) {
    case TamperOp::Insert: {
      const std::size_t out_length = length + positions.size();
      check_bounds(positions, out_length);
      auto inserted = donor_frames(spec, donor, frames.front(), positions.size());
      out.video.reserve(out_length);
      out.truth.frame_flags.reserve(out_length);
      std::size_t next_insert = 0;
      std::size_t next_source = 0;
      for (std::size_t i = 0; i < out_length; ++i) {
        if (next_insert < positions.size() && positions[next_insert] == i) {
          out.video.push_back(inserted[next_insert++]);
          out.truth.frame_flags.push_back(true);
        } else {
          out.video.push_back(frames[next_source]);
          out.truth.frame_flags.push_back(flags[next_source]);
          ++next_source;
        }
      }
      break;
    }
    case TamperOp::Delete: {
      check_bounds(positions, length);
      if (positions.size() == length) throw Error(ErrorCode::EmptyVideo, "every frame was deleted");
      const std::set<std::size_t> removed(positions.begin(), positions.end());
      bool pending_gap = false;
      for (std::size_t i = 0; i < length; ++i) {
        if (removed.count(i)) {
          pending_gap = true;
          continue;
        }
        out.video.push_back(frames[i]);
        out.truth.frame_flags.push_back(flags[i] || pending_gap);
        pending_gap = false;
      }
      // A gap at the very end has no successor; mark the frame before it.
      if (pending_gap) out.truth.frame_flags.back() = true;
      break;
    }
    case TamperOp::Reorder: {
      check_bounds(positions, length);
      out.video = frames;
      out.truth.frame_flags = flags;
      if (positions.size() < 2) break;
      // Sattolo's shuffle: a uniformly random single cycle, so no frame stays put.
      std::vector<std::size_t> order(positions.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      std::mt19937_64 rng(spec.seed);
      for (std::size_t i = order.size() - 1; i > 0; --i) {
        std::swap(order[i], order[uniform_below(rng, i)]);
      }
      for (std::size_t t = 0; t < positions.size(); ++t) {
        out.video[positions[t]] = frames[positions[order[t]]];
        out.truth.frame_flags[positions[t]] = true;
      }
      break;
    }
    case TamperOp::Replace: {
      check_bounds(positions, length);
      auto replacement = donor_frames(spec, donor, frames.front(), positions.size());
      out.video = frames;
      out.truth.frame_flags = flags;
      for (std::size_t t = 0; t < positions.size(); ++t) {
        out.video[positions[t]] = replacement[t];
        out.truth.frame_flags[positions[t]] = true;
      }
      break;
    }
  }
  return out;
}

std::vector<Frame> distort_jpeg(std::span<const Frame> video, int quality, unsigned threads) {
  if (quality < 1 || quality > 100) {
    throw Error(ErrorCode::BadSpec, "JPEG quality must be in 1..100");
  }
  std::vector<Frame> out(video.size());
  parallel_for(video.size(), threads,
               [&](std::size_t i) { out[i] = decode_jpeg(encode_jpeg(video[i], quality)); });
  return out;
}

std::vector<Frame> distort_resize(std::span<const Frame> video, double scale, unsigned threads) {
  if (!(scale > 0.0 && scale <= 1.0)) throw Error(ErrorCode::BadSpec, "scale must be in (0, 1]");
  std::vector<Frame> out(video.size());
  if (video.empty()) return out;
  // The epsilon keeps products like 1280 * 0.9 from flooring to 1151.
  auto scaled = [scale](int side) { return static_cast<int>(std::floor(side * scale + 1e-9)); };
  for (const Frame& f : video) {
    if (scaled(f.width()) < 1 || scaled(f.height()) < 1) {
      throw Error(ErrorCode::DegenerateOutput,
                  "scale " + std::to_string(scale) + " collapses a " + std::to_string(f.width()) +
                      "x" + std::to_string(f.height()) + " frame");
    }
  }
  parallel_for(video.size(), threads, [&](std::size_t i) {
    out[i] = resize_frame(video[i], scaled(video[i].width()), scaled(video[i].height()));
  });
  return out;
}

std::vector<Frame> apply_distortion(std::span<const Frame> video, const Distortion& distortion,
                                    unsigned threads) {
  std::vector<Frame> out;
  if (distortion.scale != 1.0) {
    out = distort_resize(video, distortion.scale, threads);
  } else {
    out.assign(video.begin(), video.end());
  }
  if (distortion.jpeg_quality) out = distort_jpeg(out, *distortion.jpeg_quality, threads);
  return out;
}

SynthKind parse_synth_kind(const std::string& text) {
  if (text == "solid") return SynthKind::Solid;
  if (text == "gradient_motion") return SynthKind::GradientMotion;
  if (text == "noise_texture") return SynthKind::NoiseTexture;
  throw Error(ErrorCode::BadSpec, "unknown synthetic video kind '" + text + "'");
}

namespace {

std::vector<Frame> gradient_motion(std::size_t count, int width, int height, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  struct Wave {
    double cos_a, sin_a, freq, speed, phase;
  };
  std::array<Wave, 3> waves{};
  for (auto& w : waves) {
    const double angle = uniform(rng, 0.0, 2.0 * std::numbers::pi);
    w.cos_a = std::cos(angle);
    w.sin_a = std::sin(angle);
    w.freq = uniform(rng, 0.7, 2.0);
    w.speed = uniform(rng, 0.004, 0.009) * (uniform01(rng) < 0.5 ? -1.0 : 1.0);
    w.phase = uniform(rng, 0.0, 1.0);
  }
  const double blob_px = uniform(rng, 0.0, 2.0 * std::numbers::pi);
  const double blob_py = uniform(rng, 0.0, 2.0 * std::numbers::pi);
  const double hue = uniform(rng, 0.0, 2.0 * std::numbers::pi);
  const std::array<double, 3> blob_color = {0.5 + 0.5 * std::sin(hue), 0.5 + 0.5 * std::sin(hue + 2.1),
                                            0.5 + 0.5 * std::sin(hue + 4.2)};
  const double aspect = static_cast<double>(height) / width;
  constexpr double kBlobSigma = 0.08;

  std::vector<Frame> frames;
  frames.reserve(count);
  for (std::size_t t = 0; t < count; ++t) {
    const double bx = 0.5 + 0.35 * std::sin(0.037 * t + blob_px);
    const double by = (0.5 + 0.35 * std::sin(0.029 * t + blob_py)) * aspect;
    FloatImage img(width, height);
    for (int y = 0; y < height; ++y) {
      const double v = static_cast<double>(y) / height * aspect;
      for (int x = 0; x < width; ++x) {
        const double u = static_cast<double>(x) / width;
        const double dx = u - bx;
        const double dy = v - by;
        const double blob = std::exp(-(dx * dx + dy * dy) / (2.0 * kBlobSigma * kBlobSigma));
        for (int c = 0; c < 3; ++c) {
          const Wave& w = waves[c];
          const double along = u * w.cos_a + v * w.sin_a;
          const double wave =
              0.5 + 0.4 * std::sin(2.0 * std::numbers::pi * (w.freq * along + w.speed * t + w.phase));
          img.at(x, y, c) = wave * (1.0 - blob) + blob_color[c] * blob;
        }
      }
    }
    frames.push_back(to_frame(img));
  }
  return frames;
}

std::vector<Frame> noise_texture(std::size_t count, int width, int height, std::uint64_t seed) {
  constexpr int kGrid = 9;
  std::mt19937_64 rng(seed);
  std::vector<Frame> frames;
  frames.reserve(count);
  for (std::size_t t = 0; t < count; ++t) {
    FloatImage coarse(kGrid, kGrid);
    for (double& v : coarse.data()) v = uniform01(rng);
    FloatImage img = resize_bilinear(coarse, width, height);
    for (double& v : img.data()) v = 0.85 * v + 0.15 * uniform01(rng);
    frames.push_back(to_frame(img));
  }
  return frames;
}

}  // namespace

std::vector<Frame> synth_video(SynthKind kind, std::size_t frames, int width, int height,
                               std::uint64_t seed) {
  if (frames < 1) throw Error(ErrorCode::EmptyVideo, "synthetic video needs at least one frame");
  if (width < 1 || height < 1) throw Error(ErrorCode::InvalidDimensions, "bad synthetic frame size");
  switch (kind) {
    case SynthKind::Solid:
      return std::vector<Frame>(frames, Frame(width, height, 255, 255, 255));
    case SynthKind::GradientMotion:
      return gradient_motion(frames, width, height, seed);
    case SynthKind::NoiseTexture:
      return noise_texture(frames, width, height, seed);
  }
  return {};
}

nlohmann::json spec_to_json(const TamperSpec& spec) {
  nlohmann::json j;
  j["op"] = to_string(spec.op);
  j["positions"] = spec.positions;
  if (spec.donor) j["donor"] = *spec.donor;
  j["donor_start"] = spec.donor_start;
  j["seed"] = spec.seed;
  return j;
}

TamperSpec spec_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::BadSpec, "tamper spec must be a JSON object");
  try {
    TamperSpec spec;
    spec.op = parse_tamper_op(j.at("op").get<std::string>());
    if (j.contains("positions")) {
      spec.positions = j.at("positions").get<std::vector<std::size_t>>();
    }
    if (j.contains("range")) {
      const auto range = j.at("range").get<std::vector<std::size_t>>();
      if (range.size() != 2 || range[0] > range[1]) {
        throw Error(ErrorCode::BadSpec, "range must be [first, last_exclusive]");
      }
      for (std::size_t p = range[0]; p < range[1]; ++p) spec.positions.push_back(p);
    }
    if (j.contains("donor")) spec.donor = j.at("donor").get<std::string>();
    spec.donor_start = j.value("donor_start", std::size_t{0});
    spec.seed = j.value("seed", std::uint64_t{0});
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::BadSpec, e.what());
  }
}

nlohmann::json truth_to_json(const GroundTruth& truth, int n, const nlohmann::json& spec) {
  nlohmann::json j;
  j["frame_flags"] = truth.frame_flags;
  j["block_labels"] = truth.block_labels(n);
  j["spec"] = spec;
  return j;
}

void write_truth(const std::filesystem::path& path, const GroundTruth& truth, int n,
                 const nlohmann::json& spec) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  out << truth_to_json(truth, n, spec).dump(2) << '\n';
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

GroundTruth read_truth(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::FileNotFound, path.string());
  try {
    const auto j = nlohmann::json::parse(in);
    return {j.at("frame_flags").get<std::vector<bool>>()};
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::BadSpec, path.string() + ": " + e.what());
  }
}

}  // namespace vidseal
