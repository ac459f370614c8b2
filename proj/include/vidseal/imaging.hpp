#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

namespace vidseal {

// One 8-bit RGB raster, row-major, interleaved R,G,B.
class Frame {
 public:
  static constexpr int kChannels = 3;

  Frame() = default;
  // Zero-filled frame. Throws InvalidDimensions if either side is < 1.
  Frame(int width, int height);
  Frame(int width, int height, std::uint8_t r, std::uint8_t g, std::uint8_t b);
  // Throws InvalidDimensions if data.size() != width*height*3.
  Frame(int width, int height, std::vector<std::uint8_t> data);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  bool empty() const noexcept { return data_.empty(); }

  std::uint8_t& at(int x, int y, int c) { return data_[index(x, y, c)]; }
  std::uint8_t at(int x, int y, int c) const { return data_[index(x, y, c)]; }

  const std::vector<std::uint8_t>& data() const noexcept { return data_; }
  std::vector<std::uint8_t>& data() noexcept { return data_; }

  bool same_size(const Frame& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_;
  }

  friend bool operator==(const Frame&, const Frame&) = default;

 private:
  std::size_t index(int x, int y, int c) const {
    return (static_cast<std::size_t>(y) * width_ + x) * kChannels + c;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> data_;
};

// Real-valued RGB image with samples nominally in [0,1].
class FloatImage {
 public:
  static constexpr int kChannels = 3;

  FloatImage() = default;
  FloatImage(int width, int height, double fill = 0.0);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }

  double& at(int x, int y, int c) { return data_[index(x, y, c)]; }
  double at(int x, int y, int c) const { return data_[index(x, y, c)]; }

  const std::vector<double>& data() const noexcept { return data_; }
  std::vector<double>& data() noexcept { return data_; }

 private:
  std::size_t index(int x, int y, int c) const {
    return (static_cast<std::size_t>(y) * width_ + x) * kChannels + c;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<double> data_;
};

FloatImage to_float(const Frame& frame);

// Rounds to nearest and clamps to [0,255].
Frame to_frame(const FloatImage& img);

// Normalized 5-tap kernel sampled from N(0,1) at offsets -2..2.
const std::array<double, 5>& gaussian_kernel_5();

// Separable 5x5 Gaussian (sigma 1) with clamp-to-edge borders.
FloatImage gaussian_blur_5x5(const FloatImage& img);

// Bilinear resampling with half-pixel centers: the source coordinate of output
// sample i is (i + 0.5) * in/out - 0.5, clamped to the valid range.
FloatImage resize_bilinear(const FloatImage& img, int out_w, int out_h);

// Convenience: 8-bit in, 8-bit out.
Frame resize_frame(const Frame& frame, int out_w, int out_h);

// PNG or binary PPM (P6; P5 is accepted and expanded to RGB). Format is
// detected from the file signature, not the extension.
Frame load_frame(const std::filesystem::path& path);

// Format chosen by extension: ".png" or ".ppm".
void save_frame(const Frame& frame, const std::filesystem::path& path);

}  // namespace vidseal
