#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "vidseal/imaging.hpp"

namespace vidseal {

enum class FrameFormat { Png, Ppm };

// "frame_000001.png" for index 1.
std::string frame_file_name(std::size_t index, FrameFormat format);

// Loads frame_%06d.{png,ppm} starting at index 1. Indices must be contiguous
// and every frame must share one size. Other files in the directory are
// ignored.
//
// Errors: FileNotFound (missing directory), EmptyVideo (no frame files),
// BadSequence (gap, duplicate index, or mixed extensions),
// HeterogeneousDimensions, plus anything load_frame throws.
std::vector<Frame> load_frame_sequence(const std::filesystem::path& dir);

// Writes frames as frame_000001.* ... into dir, creating it if needed.
void save_frame_sequence(const std::vector<Frame>& frames, const std::filesystem::path& dir,
                         FrameFormat format = FrameFormat::Png);

}  // namespace vidseal
