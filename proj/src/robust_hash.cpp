#include "vidseal/robust_hash.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "vidseal/error.hpp"

namespace vidseal {

namespace {

constexpr char kHexDigits[] = "0123456789abcdef";

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

// Kernel samples for every pixel center inside the unit disk, row-major.
struct QpctBasis {
  std::vector<std::size_t> pixel;                                // index into the 128x128 grid
  std::vector<std::array<double, kRadialOrders>> radial;         // cos(pi s r^2)
  std::vector<std::array<double, kAngularOrders>> cos_angular;   // cos(l theta)
  std::vector<std::array<double, kAngularOrders>> sin_angular;   // sin(l theta)
};

const QpctBasis& qpct_basis() {
  static const QpctBasis basis = [] {
    QpctBasis b;
    for (int y = 0; y < kHashSide; ++y) {
      const double py = (y + 0.5) * 2.0 / kHashSide - 1.0;
      for (int x = 0; x < kHashSide; ++x) {
        const double px = (x + 0.5) * 2.0 / kHashSide - 1.0;
        const double r2 = px * px + py * py;
        if (r2 > 1.0) continue;
        const double theta = std::atan2(py, px);
        std::array<double, kRadialOrders> rad{};
        for (int s = 0; s < kRadialOrders; ++s) rad[s] = std::cos(std::numbers::pi * s * r2);
        std::array<double, kAngularOrders> ca{};
        std::array<double, kAngularOrders> sa{};
        for (int l = 0; l < kAngularOrders; ++l) {
          ca[l] = std::cos(l * theta);
          sa[l] = std::sin(l * theta);
        }
        b.pixel.push_back(static_cast<std::size_t>(y) * kHashSide + x);
        b.radial.push_back(rad);
        b.cos_angular.push_back(ca);
        b.sin_angular.push_back(sa);
      }
    }
    return b;
  }();
  return basis;
}

}  // namespace

std::string HashValue::to_hex() const {
  std::string out;
  out.reserve(2 * kBytes);
  for (auto b : bytes_) {
    out.push_back(kHexDigits[b >> 4]);
    out.push_back(kHexDigits[b & 0xf]);
  }
  return out;
}

HashValue HashValue::from_hex(std::string_view hex) {
  if (hex.size() != 2 * kBytes) {
    throw Error(ErrorCode::BadSpec, "hash hex must be 30 digits");
  }
  Bytes bytes{};
  for (int i = 0; i < kBytes; ++i) {
    const int hi = hex_value(hex[2 * i]);
    const int lo = hex_value(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) throw Error(ErrorCode::BadSpec, "invalid hex digit in hash");
    bytes[i] = static_cast<std::uint8_t>(hi << 4 | lo);
  }
  return HashValue(bytes);
}

int hamming_distance(const HashValue& a, const HashValue& b) {
  int total = 0;
  for (int i = 0; i < HashValue::kBytes; ++i) {
    total += std::popcount(static_cast<std::uint8_t>(a.bytes()[i] ^ b.bytes()[i]));
  }
  return total;
}

FloatImage preprocess(const Frame& frame) {
  return resize_bilinear(gaussian_blur_5x5(to_float(frame)), kHashSide, kHashSide);
}

FeatureVector qpct_features(const FloatImage& img) {
  if (img.width() != kHashSide || img.height() != kHashSide) {
    throw Error(ErrorCode::DimensionMismatch,
                "QPCT input must be 128x128, got " + std::to_string(img.width()) + "x" +
                    std::to_string(img.height()));
  }
  const QpctBasis& basis = qpct_basis();
  const auto& samples = img.data();

  // For each (s, l): A = sum rad * v * cos(l theta), B = sum rad * v * sin(l theta),
  // where v = (R, G, B) is the vector part of the pixel quaternion.
  std::array<std::array<double, 3>, kFeatureCount> cos_sum{};
  std::array<std::array<double, 3>, kFeatureCount> sin_sum{};

  for (std::size_t p = 0; p < basis.pixel.size(); ++p) {
    const double* v = &samples[basis.pixel[p] * 3];
    const auto& rad = basis.radial[p];
    const auto& ca = basis.cos_angular[p];
    const auto& sa = basis.sin_angular[p];
    for (int s = 0; s < kRadialOrders; ++s) {
      const double wr = rad[s] * v[0];
      const double wg = rad[s] * v[1];
      const double wb = rad[s] * v[2];
      for (int l = 0; l < kAngularOrders; ++l) {
        auto& cs = cos_sum[feature_index(s, l)];
        auto& ss = sin_sum[feature_index(s, l)];
        cs[0] += wr * ca[l];
        cs[1] += wg * ca[l];
        cs[2] += wb * ca[l];
        ss[0] += wr * sa[l];
        ss[1] += wg * sa[l];
        ss[2] += wb * sa[l];
      }
    }
  }

  // f * (cos - mu sin) for pure f = (0, v):
  //   scalar = sin * (v . mu), vector = cos * v - sin * (v x mu).
  const double m = 1.0 / std::sqrt(3.0);
  const double area = (2.0 / kHashSide) * (2.0 / kHashSide);
  FeatureVector features{};
  for (int k = 0; k < kFeatureCount; ++k) {
    const auto& a = cos_sum[k];
    const auto& b = sin_sum[k];
    const double scalar = m * (b[0] + b[1] + b[2]);
    const double vx = a[0] - m * (b[1] - b[2]);
    const double vy = a[1] - m * (b[2] - b[0]);
    const double vz = a[2] - m * (b[0] - b[1]);
    features[k] = area * std::sqrt(scalar * scalar + vx * vx + vy * vy + vz * vz);
  }
  return features;
}

HashValue binarize(const FeatureVector& features) {
  for (double f : features) {
    if (!std::isfinite(f)) throw Error(ErrorCode::NonFiniteFeature, "feature is NaN or infinite");
  }
  FeatureVector sorted = features;
  constexpr int kLowerMiddle = kFeatureCount / 2 - 1;
  std::nth_element(sorted.begin(), sorted.begin() + kLowerMiddle, sorted.end());
  const double median = sorted[kLowerMiddle];

  HashValue hash;
  for (int k = 0; k < kFeatureCount; ++k) hash.set_bit(k, features[k] >= median);
  return hash;
}

HashValue compute_hash(const Frame& frame) { return binarize(qpct_features(preprocess(frame))); }

}  // namespace vidseal
