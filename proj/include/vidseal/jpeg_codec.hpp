#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "vidseal/imaging.hpp"

namespace vidseal {

// Baseline JPEG with libjpeg defaults (4:2:0 chroma, islow DCT).
std::vector<std::uint8_t> encode_jpeg(const Frame& frame, int quality);

// Throws CorruptImage.
Frame decode_jpeg(std::span<const std::uint8_t> bytes);

}  // namespace vidseal
