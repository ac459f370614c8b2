#include "vidseal/tamper_sim.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "test_util.hpp"
#include "vidseal/error.hpp"

namespace vidseal {
namespace {

std::vector<Frame> numbered_video(std::size_t count, std::uint8_t offset = 0) {
  std::vector<Frame> video;
  for (std::size_t i = 0; i < count; ++i) {
    video.emplace_back(4, 3, static_cast<std::uint8_t>(i + offset), 0, offset);
  }
  return video;
}

std::vector<std::size_t> range(std::size_t first, std::size_t last) {
  std::vector<std::size_t> out(last - first);
  std::iota(out.begin(), out.end(), first);
  return out;
}

ErrorCode error_of(std::span<const Frame> video, const TamperSpec& spec,
                   std::span<const Frame> donor = {}) {
  try {
    apply_tamper(video, spec, donor);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "tamper succeeded";
  return ErrorCode::BadSpec;
}

TEST(TamperTest, EmptyDeleteIsIdentity) {
  const auto video = numbered_video(10);
  const auto out = apply_tamper(video, {TamperOp::Delete, {}});
  EXPECT_EQ(out.video, video);
  EXPECT_EQ(out.truth.flagged_count(), 0u);
}

TEST(TamperTest, ReplaceFlagsExactlyTheReplacedFrames) {
  const auto video = numbered_video(64);
  const auto donor = numbered_video(10, 100);
  const auto out = apply_tamper(video, {TamperOp::Replace, range(10, 20)}, donor);
  ASSERT_EQ(out.video.size(), 64u);
  for (std::size_t i = 0; i < 64; ++i) {
    const bool inside = i >= 10 && i < 20;
    EXPECT_EQ(out.truth.frame_flags[i], inside) << i;
    EXPECT_EQ(out.video[i], inside ? donor[i - 10] : video[i]) << i;
  }
  EXPECT_EQ(out.truth.block_labels(8), std::vector<bool>{true});
}

TEST(TamperTest, ReorderOfTwoSwapsThem) {
  const auto video = numbered_video(5);
  const auto out = apply_tamper(video, {TamperOp::Reorder, {0, 1}});
  EXPECT_EQ(out.video[0], video[1]);
  EXPECT_EQ(out.video[1], video[0]);
  EXPECT_EQ(out.truth.frame_flags, (std::vector<bool>{true, true, false, false, false}));
}

TEST(TamperTest, ReorderMovesEveryListedFrameAndKeepsTheMultiset) {
  const auto video = numbered_video(40);
  const std::vector<std::size_t> positions{1, 5, 6, 12, 20, 33, 39};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    TamperSpec spec{TamperOp::Reorder, positions};
    spec.seed = seed;
    const auto out = apply_tamper(video, spec);
    for (std::size_t i = 0; i < video.size(); ++i) {
      const bool listed = std::count(positions.begin(), positions.end(), i) > 0;
      EXPECT_EQ(out.video[i] != video[i], listed);
      EXPECT_EQ(out.truth.frame_flags[i], listed);
    }
    auto key = [](const Frame& f) { return f.at(0, 0, 0); };
    std::vector<int> a, b;
    for (const auto& f : video) a.push_back(key(f));
    for (const auto& f : out.video) b.push_back(key(f));
    std::sort(b.begin(), b.end());
    EXPECT_EQ(a, b);
    EXPECT_EQ(apply_tamper(video, spec).video, out.video);
  }
}

TEST(TamperTest, DeleteShortensAndMarksTheSeam) {
  const auto video = numbered_video(64);
  const auto out = apply_tamper(video, {TamperOp::Delete, range(20, 30)});
  ASSERT_EQ(out.video.size(), 54u);
  EXPECT_EQ(out.video[20], video[30]);
  EXPECT_EQ(out.truth.flagged_count(), 1u);
  EXPECT_TRUE(out.truth.frame_flags[20]);

  const auto tail = apply_tamper(video, {TamperOp::Delete, range(60, 64)});
  ASSERT_EQ(tail.video.size(), 60u);
  EXPECT_TRUE(tail.truth.frame_flags[59]);
  EXPECT_EQ(tail.truth.flagged_count(), 1u);
}

TEST(TamperTest, InsertUsesOutputPositions) {
  const auto video = numbered_video(10);
  const auto donor = numbered_video(5, 200);
  TamperSpec spec{TamperOp::Insert, {0, 4, 5}};
  spec.donor_start = 2;
  const auto out = apply_tamper(video, spec, donor);
  ASSERT_EQ(out.video.size(), 13u);
  EXPECT_EQ(out.video[0], donor[2]);
  EXPECT_EQ(out.video[1], video[0]);
  EXPECT_EQ(out.video[4], donor[3]);
  EXPECT_EQ(out.video[5], donor[4]);
  EXPECT_EQ(out.video[6], video[3]);
  EXPECT_EQ(out.video[12], video[9]);
  EXPECT_EQ(out.truth.flagged_count(), 3u);
}

TEST(TamperTest, ChainingCarriesFlags) {
  const auto video = numbered_video(20);
  const auto donor = numbered_video(4, 100);
  const auto first = apply_tamper(video, {TamperOp::Replace, {2, 3}}, donor);
  const auto second = apply_tamper(first, {TamperOp::Delete, {0}});
  ASSERT_EQ(second.video.size(), 19u);
  EXPECT_TRUE(second.truth.frame_flags[0]);  // seam
  EXPECT_TRUE(second.truth.frame_flags[1]);
  EXPECT_TRUE(second.truth.frame_flags[2]);
  EXPECT_EQ(second.truth.flagged_count(), 3u);
}

TEST(TamperTest, Errors) {
  const auto video = numbered_video(10);
  const auto donor = numbered_video(3, 50);
  EXPECT_EQ(error_of(video, {TamperOp::Insert, {1}}), ErrorCode::MissingDonor);
  EXPECT_EQ(error_of(video, {TamperOp::Replace, {1}}), ErrorCode::MissingDonor);
  EXPECT_EQ(error_of(video, {TamperOp::Delete, {10}}), ErrorCode::OutOfBounds);
  EXPECT_EQ(error_of(video, {TamperOp::Reorder, {3, 12}}), ErrorCode::OutOfBounds);
  EXPECT_EQ(error_of(video, {TamperOp::Replace, {1, 2, 3, 4}}, donor), ErrorCode::OutOfBounds);
  EXPECT_EQ(error_of(video, {TamperOp::Insert, {11}}, donor), ErrorCode::OutOfBounds);
  EXPECT_EQ(error_of(video, {TamperOp::Delete, {2, 2}}), ErrorCode::BadSpec);
  EXPECT_EQ(error_of(video, {TamperOp::Delete, range(0, 10)}), ErrorCode::EmptyVideo);
  const std::vector<Frame> wrong{Frame(5, 3)};
  EXPECT_EQ(error_of(video, {TamperOp::Replace, {0}}, wrong), ErrorCode::HeterogeneousDimensions);
}

TEST(TamperTest, WhiteVideoWithBlackFrameFixture) {
  const std::vector<Frame> white(64, Frame(16, 9, 255, 255, 255));
  const std::vector<Frame> black{Frame(16, 9)};
  const auto out = apply_tamper(white, {TamperOp::Replace, {27}}, black);
  EXPECT_EQ(out.video[27], Frame(16, 9));
  EXPECT_EQ(out.truth.flagged_count(), 1u);
  EXPECT_EQ(out.truth.block_labels(8), std::vector<bool>{true});
}

TEST(DistortionTest, JpegQuality100IsNearLossless) {
  Frame f(64, 48);
  for (int y = 0; y < 48; ++y) {
    for (int x = 0; x < 64; ++x) {
      f.at(x, y, 0) = static_cast<std::uint8_t>(x * 4);
      f.at(x, y, 1) = static_cast<std::uint8_t>(y * 5);
      f.at(x, y, 2) = static_cast<std::uint8_t>(128);
    }
  }
  const std::vector<Frame> video{f};
  const auto out = distort_jpeg(video, 100);
  ASSERT_TRUE(out[0].same_size(f));
  int worst = 0;
  for (std::size_t i = 0; i < f.data().size(); ++i) {
    worst = std::max(worst, std::abs(int{out[0].data()[i]} - int{f.data()[i]}));
  }
  EXPECT_LE(worst, 4);
  EXPECT_THROW(distort_jpeg(video, 0), Error);
  EXPECT_THROW(distort_jpeg(video, 101), Error);
}

TEST(DistortionTest, ResizeDimensions) {
  const std::vector<Frame> hd{Frame(1280, 720)};
  const auto out = distort_resize(hd, 0.9);
  EXPECT_EQ(out[0].width(), 1152);
  EXPECT_EQ(out[0].height(), 648);
  const std::vector<Frame> small{Frame(100, 100)};
  try {
    distort_resize(small, 0.005);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateOutput);
  }
  EXPECT_THROW(distort_resize(small, 1.5), Error);
}

TEST(DistortionTest, Presets) {
  const auto video = synth_video(SynthKind::GradientMotion, 3, 320, 180, 1);
  const auto twitter = apply_distortion(video, Distortion::twitter_like());
  const auto insta = apply_distortion(video, Distortion::instagram_like());
  EXPECT_EQ(twitter[0].width(), 320);
  EXPECT_EQ(insta[0].width(), 288);
  EXPECT_EQ(insta[0].height(), 162);
  EXPECT_NE(twitter[0], video[0]);
  EXPECT_EQ(apply_distortion(video, {}), video);
}

double mean_abs_diff(const Frame& a, const Frame& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) sum += std::abs(a.data()[i] - b.data()[i]);
  return sum / a.data().size();
}

double changed_fraction(const Frame& a, const Frame& b) {
  std::size_t changed = 0;
  for (std::size_t i = 0; i < a.data().size(); ++i) changed += a.data()[i] != b.data()[i];
  return static_cast<double>(changed) / a.data().size();
}

TEST(SynthTest, SolidIsWhite) {
  for (const auto& f : synth_video(SynthKind::Solid, 3, 8, 4, 0)) {
    EXPECT_EQ(f, Frame(8, 4, 255, 255, 255));
  }
}

TEST(SynthTest, DeterministicPerSeed) {
  for (auto kind : {SynthKind::GradientMotion, SynthKind::NoiseTexture}) {
    EXPECT_EQ(synth_video(kind, 4, 32, 18, 9), synth_video(kind, 4, 32, 18, 9));
    EXPECT_NE(synth_video(kind, 4, 32, 18, 9), synth_video(kind, 4, 32, 18, 10));
  }
}

TEST(SynthTest, GradientMotionFramesAreDistinct) {
  const auto video = synth_video(SynthKind::GradientMotion, 64, 160, 90, 3);
  EXPECT_GT(mean_abs_diff(video[0], video[32]), 5.0);
  for (std::size_t i = 0; i < video.size(); ++i) {
    for (std::size_t j = i + 1; j < video.size(); ++j) {
      ASSERT_GE(changed_fraction(video[i], video[j]), 0.01) << i << " vs " << j;
    }
  }
}

TEST(SynthTest, ParseKind) {
  EXPECT_EQ(parse_synth_kind("noise_texture"), SynthKind::NoiseTexture);
  EXPECT_THROW(parse_synth_kind("plasma"), Error);
}

TEST(TruthJsonTest, SpecRoundTrip) {
  TamperSpec spec{TamperOp::Insert, {3, 9, 4}};
  spec.donor = "donor_frames";
  spec.donor_start = 2;
  spec.seed = 42;
  const auto back = spec_from_json(spec_to_json(spec));
  EXPECT_EQ(back.op, spec.op);
  EXPECT_EQ(back.positions, spec.positions);
  EXPECT_EQ(back.donor, spec.donor);
  EXPECT_EQ(back.donor_start, 2u);
  EXPECT_EQ(back.seed, 42u);

  const auto ranged = spec_from_json(nlohmann::json::parse(R"({"op":"delete","range":[5,8]})"));
  EXPECT_EQ(ranged.positions, (std::vector<std::size_t>{5, 6, 7}));
  EXPECT_THROW(spec_from_json(nlohmann::json::parse(R"({"op":"melt"})")), Error);
}

TEST(TruthJsonTest, FileRoundTrip) {
  testing::TempDir dir;
  GroundTruth truth{std::vector<bool>(70, false)};
  truth.frame_flags[66] = true;
  write_truth(dir / "truth.json", truth, 8, spec_to_json({TamperOp::Delete, {1}}));
  EXPECT_EQ(read_truth(dir / "truth.json").frame_flags, truth.frame_flags);
  const auto j = nlohmann::json::parse(truth_to_json(truth, 8, nullptr).dump());
  EXPECT_EQ(j["block_labels"], nlohmann::json({false, true}));
}

}  // namespace
}  // namespace vidseal
