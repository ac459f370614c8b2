#include "vidseal/extended_frame.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>

#include "vidseal/error.hpp"

namespace vidseal {

namespace {

void check_grid(int n) {
  if (n < 2) throw Error(ErrorCode::InvalidGrid, "grid side must be >= 2, got " + std::to_string(n));
}

int isqrt_exact(std::size_t count) {
  const auto n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(count))));
  if (static_cast<std::size_t>(n) * n != count) {
    throw Error(ErrorCode::InvalidGrid, "block size is not a perfect square");
  }
  return n;
}

}  // namespace

std::vector<FrameBlock> partition(std::span<const Frame> video, int n) {
  check_grid(n);
  if (video.empty()) throw Error(ErrorCode::EmptyVideo, "cannot partition an empty video");
  for (const Frame& f : video) {
    if (!f.same_size(video.front())) {
      throw Error(ErrorCode::HeterogeneousDimensions, "all frames must share one size");
    }
  }

  const std::size_t per_block = static_cast<std::size_t>(n) * n;
  const std::size_t count = block_count(video.size(), n);
  const std::size_t pad = count * per_block - video.size();
  auto black = pad > 0 ? std::make_shared<const Frame>(video.front().width(), video.front().height())
                       : nullptr;

  std::vector<FrameBlock> blocks(count);
  for (std::size_t b = 0; b < count; ++b) {
    FrameBlock& block = blocks[b];
    block.index = b;
    block.frames.reserve(per_block);
    for (std::size_t j = 0; j < per_block; ++j) {
      const std::size_t src = b * per_block + j;
      if (src < video.size()) {
        block.frames.emplace_back(video[src]);
      } else {
        block.frames.emplace_back(*black);
      }
    }
    if (b + 1 == count && pad > 0) {
      block.pad_count = pad;
      block.padding = black;
    }
  }
  return blocks;
}

std::vector<int> corner_to_center_permutation(int n) {
  check_grid(n);
  const int cells = n * n;
  // Squared distance to the center scaled by 4 keeps everything integral.
  auto dist2 = [n](int cell) {
    const int a = 2 * (cell / n) - (n - 1);
    const int b = 2 * (cell % n) - (n - 1);
    return a * a + b * b;
  };

  std::vector<int> far_first(cells);
  std::iota(far_first.begin(), far_first.end(), 0);
  std::vector<int> near_first = far_first;
  std::stable_sort(far_first.begin(), far_first.end(),
                   [&](int x, int y) { return dist2(x) > dist2(y); });
  std::stable_sort(near_first.begin(), near_first.end(),
                   [&](int x, int y) { return dist2(x) < dist2(y); });

  std::vector<int> perm(cells);
  for (int i = 0; i < cells; ++i) perm[far_first[i]] = near_first[i];
  return perm;
}

std::vector<int> cell_assignment(int n, GridOrdering ordering) {
  if (ordering == GridOrdering::CornerToCenter) return corner_to_center_permutation(n);
  check_grid(n);
  std::vector<int> cells(static_cast<std::size_t>(n) * n);
  std::iota(cells.begin(), cells.end(), 0);
  return cells;
}

std::vector<Frame> resize_tiles(const FrameBlock& block, TileSize tile) {
  if (tile.width < 8 || tile.height < 8) {
    throw Error(ErrorCode::InvalidDimensions, "tile must be at least 8x8");
  }
  std::vector<Frame> tiles;
  tiles.reserve(block.frames.size());
  for (const Frame& f : block.frames) tiles.push_back(resize_frame(f, tile.width, tile.height));
  return tiles;
}

Frame assemble_mosaic(std::span<const Frame> tiles, int n, GridOrdering ordering) {
  if (tiles.size() != static_cast<std::size_t>(n) * n) {
    throw Error(ErrorCode::InvalidGrid, "mosaic needs exactly n*n tiles");
  }
  const int tw = tiles.front().width();
  const int th = tiles.front().height();
  for (const Frame& t : tiles) {
    if (t.width() != tw || t.height() != th) {
      throw Error(ErrorCode::HeterogeneousDimensions, "mosaic tiles must share one size");
    }
  }
  const std::vector<int> cells = cell_assignment(n, ordering);

  Frame mosaic(n * tw, n * th);
  const std::size_t row_bytes = static_cast<std::size_t>(tw) * Frame::kChannels;
  for (std::size_t j = 0; j < tiles.size(); ++j) {
    const int row = cells[j] / n;
    const int col = cells[j] % n;
    const std::uint8_t* src = tiles[j].data().data();
    for (int y = 0; y < th; ++y) {
      std::memcpy(&mosaic.at(col * tw, row * th + y, 0), src + y * row_bytes, row_bytes);
    }
  }
  return mosaic;
}

ExtendedFrame tile(const FrameBlock& block, GridOrdering ordering, TileSize tile_size) {
  const int n = isqrt_exact(block.frames.size());
  const auto tiles = resize_tiles(block, tile_size);
  return {block.index, ordering, assemble_mosaic(tiles, n, ordering)};
}

}  // namespace vidseal
