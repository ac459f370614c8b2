#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <string>
#include <string_view>

#include "vidseal/imaging.hpp"

namespace vidseal {

// 120-bit robust hash. Bit k lives in byte k/8 at bit position k%8 (LSB first).
class HashValue {
 public:
  static constexpr int kBits = 120;
  static constexpr int kBytes = kBits / 8;
  using Bytes = std::array<std::uint8_t, kBytes>;

  HashValue() = default;
  explicit HashValue(const Bytes& bytes) : bytes_(bytes) {}

  bool bit(int k) const { return (bytes_[k / 8] >> (k % 8)) & 1u; }
  void set_bit(int k, bool value) {
    const auto mask = static_cast<std::uint8_t>(1u << (k % 8));
    bytes_[k / 8] = value ? (bytes_[k / 8] | mask) : (bytes_[k / 8] & ~mask);
  }

  int popcount() const {
    int total = 0;
    for (auto b : bytes_) total += std::popcount(b);
    return total;
  }

  HashValue complement() const {
    HashValue out;
    for (int i = 0; i < kBytes; ++i) out.bytes_[i] = static_cast<std::uint8_t>(~bytes_[i]);
    return out;
  }

  const Bytes& bytes() const noexcept { return bytes_; }

  // 30 lowercase hex digits, byte 0 first.
  std::string to_hex() const;
  // Throws BadSpec on malformed input.
  static HashValue from_hex(std::string_view hex);

  friend bool operator==(const HashValue&, const HashValue&) = default;

 private:
  Bytes bytes_{};
};

// Number of differing bits, 0..120.
int hamming_distance(const HashValue& a, const HashValue& b);

inline constexpr int kRadialOrders = 8;      // s = 0..7
inline constexpr int kAngularOrders = 15;    // l = 0..14
inline constexpr int kFeatureCount = kRadialOrders * kAngularOrders;
inline constexpr int kHashSide = 128;

// Quaternion moment magnitudes indexed by s * 15 + l.
using FeatureVector = std::array<double, kFeatureCount>;

constexpr int feature_index(int s, int l) { return s * kAngularOrders + l; }

// Blur (5x5, sigma 1) then bilinear resize to 128x128.
FloatImage preprocess(const Frame& frame);

// Quaternion polar cosine moments over the disk inscribed in the 128x128
// image. Each pixel is the pure quaternion iR + jG + kB, weighted by
// cos(pi s r^2) exp(-mu l theta) with mu = (i + j + k)/sqrt(3).
// Throws DimensionMismatch unless img is 128x128.
FeatureVector qpct_features(const FloatImage& img);

// bit k = features[k] >= lower median. Throws NonFiniteFeature.
HashValue binarize(const FeatureVector& features);

HashValue compute_hash(const Frame& frame);

}  // namespace vidseal
