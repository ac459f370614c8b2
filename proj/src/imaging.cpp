#include "vidseal/imaging.hpp"

#include <algorithm>
#include <cmath>

#include "vidseal/error.hpp"

namespace vidseal {

namespace {

void check_dims(int width, int height) {
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::InvalidDimensions,
                "image dimensions must be positive, got " + std::to_string(width) + "x" +
                    std::to_string(height));
  }
}

std::size_t sample_count(int width, int height) {
  return static_cast<std::size_t>(width) * height * Frame::kChannels;
}

}  // namespace

Frame::Frame(int width, int height) : width_(width), height_(height) {
  check_dims(width, height);
  data_.assign(sample_count(width, height), 0);
}

Frame::Frame(int width, int height, std::uint8_t r, std::uint8_t g, std::uint8_t b)
    : Frame(width, height) {
  for (std::size_t i = 0; i < data_.size(); i += kChannels) {
    data_[i] = r;
    data_[i + 1] = g;
    data_[i + 2] = b;
  }
}

Frame::Frame(int width, int height, std::vector<std::uint8_t> data)
    : width_(width), height_(height), data_(std::move(data)) {
  check_dims(width, height);
  if (data_.size() != sample_count(width, height)) {
    throw Error(ErrorCode::InvalidDimensions, "pixel buffer size does not match dimensions");
  }
}

FloatImage::FloatImage(int width, int height, double fill) : width_(width), height_(height) {
  check_dims(width, height);
  data_.assign(sample_count(width, height), fill);
}

FloatImage to_float(const Frame& frame) {
  FloatImage out(frame.width(), frame.height());
  const auto& src = frame.data();
  auto& dst = out.data();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i] / 255.0;
  return out;
}

Frame to_frame(const FloatImage& img) {
  Frame out(img.width(), img.height());
  const auto& src = img.data();
  auto& dst = out.data();
  for (std::size_t i = 0; i < src.size(); ++i) {
    const double v = std::round(src[i] * 255.0);
    dst[i] = static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
  }
  return out;
}

const std::array<double, 5>& gaussian_kernel_5() {
  static const std::array<double, 5> kernel = [] {
    std::array<double, 5> k{};
    double sum = 0.0;
    for (int i = 0; i < 5; ++i) {
      const double x = i - 2;
      k[i] = std::exp(-0.5 * x * x);
      sum += k[i];
    }
    for (double& v : k) v /= sum;
    return k;
  }();
  return kernel;
}

FloatImage gaussian_blur_5x5(const FloatImage& img) {
  const auto& k = gaussian_kernel_5();
  const int w = img.width();
  const int h = img.height();
  constexpr int C = FloatImage::kChannels;

  FloatImage horizontal(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < C; ++c) {
        double acc = 0.0;
        for (int t = -2; t <= 2; ++t) {
          const int sx = std::clamp(x + t, 0, w - 1);
          acc += k[t + 2] * img.at(sx, y, c);
        }
        horizontal.at(x, y, c) = acc;
      }
    }
  }

  FloatImage out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < C; ++c) {
        double acc = 0.0;
        for (int t = -2; t <= 2; ++t) {
          const int sy = std::clamp(y + t, 0, h - 1);
          acc += k[t + 2] * horizontal.at(x, sy, c);
        }
        out.at(x, y, c) = acc;
      }
    }
  }
  return out;
}

namespace {

struct Tap {
  int i0;
  int i1;
  double frac;
};

std::vector<Tap> bilinear_taps(int in, int out) {
  std::vector<Tap> taps(out);
  const double scale = static_cast<double>(in) / out;
  for (int i = 0; i < out; ++i) {
    double src = (i + 0.5) * scale - 0.5;
    src = std::clamp(src, 0.0, static_cast<double>(in - 1));
    const int i0 = static_cast<int>(std::floor(src));
    const int i1 = std::min(i0 + 1, in - 1);
    taps[i] = {i0, i1, src - i0};
  }
  return taps;
}

}  // namespace

FloatImage resize_bilinear(const FloatImage& img, int out_w, int out_h) {
  if (out_w < 1 || out_h < 1) {
    throw Error(ErrorCode::InvalidDimensions, "resize target must be at least 1x1");
  }
  constexpr int C = FloatImage::kChannels;
  const auto xs = bilinear_taps(img.width(), out_w);
  const auto ys = bilinear_taps(img.height(), out_h);

  FloatImage out(out_w, out_h);
  for (int y = 0; y < out_h; ++y) {
    const Tap& ty = ys[y];
    for (int x = 0; x < out_w; ++x) {
      const Tap& tx = xs[x];
      for (int c = 0; c < C; ++c) {
        const double top = img.at(tx.i0, ty.i0, c) * (1.0 - tx.frac) + img.at(tx.i1, ty.i0, c) * tx.frac;
        const double bottom =
            img.at(tx.i0, ty.i1, c) * (1.0 - tx.frac) + img.at(tx.i1, ty.i1, c) * tx.frac;
        out.at(x, y, c) = top * (1.0 - ty.frac) + bottom * ty.frac;
      }
    }
  }
  return out;
}

Frame resize_frame(const Frame& frame, int out_w, int out_h) {
  if (frame.width() == out_w && frame.height() == out_h) return frame;
  return to_frame(resize_bilinear(to_float(frame), out_w, out_h));
}

}  // namespace vidseal
