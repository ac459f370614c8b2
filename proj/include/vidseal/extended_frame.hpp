#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "vidseal/imaging.hpp"

namespace vidseal {

enum class GridOrdering { Primary, CornerToCenter };

// n*n consecutive frames of a video. Non-owning view: the source video must
// outlive the block. Padding frames (all black) are owned by the block.
struct FrameBlock {
  std::size_t index = 0;
  std::vector<std::reference_wrapper<const Frame>> frames;
  std::size_t pad_count = 0;
  std::shared_ptr<const Frame> padding;
};

struct TileSize {
  int width = 96;
  int height = 54;

  friend bool operator==(const TileSize&, const TileSize&) = default;
};

struct ExtendedFrame {
  std::size_t block_index = 0;
  GridOrdering ordering = GridOrdering::Primary;
  Frame image;
};

// Splits a video into ceil(L / n^2) blocks; the last one is padded with black
// frames. Throws EmptyVideo, HeterogeneousDimensions, InvalidGrid (n < 2).
std::vector<FrameBlock> partition(std::span<const Frame> video, int n);

inline std::size_t block_count(std::size_t frame_count, int n) {
  const std::size_t per_block = static_cast<std::size_t>(n) * n;
  return (frame_count + per_block - 1) / per_block;
}

// perm[primary_cell] = cell used by the CornerToCenter layout, cells in
// row-major order. Cells are ranked by distance to the grid center: the k-th
// farthest cell moves to the k-th nearest one (ties broken row-major).
// Throws InvalidGrid if n < 2.
std::vector<int> corner_to_center_permutation(int n);

// Frame j of the block lands in cell j (Primary) or perm[j] (CornerToCenter).
std::vector<int> cell_assignment(int n, GridOrdering ordering);

// Resizes every frame of the block to the tile size.
std::vector<Frame> resize_tiles(const FrameBlock& block, TileSize tile);

// Lays out n*n equally sized tiles into one mosaic.
Frame assemble_mosaic(std::span<const Frame> tiles, int n, GridOrdering ordering);

// Throws InvalidDimensions if the tile is smaller than 8x8.
ExtendedFrame tile(const FrameBlock& block, GridOrdering ordering, TileSize tile_size);

}  // namespace vidseal
