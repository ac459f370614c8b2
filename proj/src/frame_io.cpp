#include "vidseal/frame_io.hpp"

#include <png.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <map>
#include <optional>
#include <regex>

#include "vidseal/error.hpp"

namespace vidseal {

namespace fs = std::filesystem;

namespace {

std::vector<std::uint8_t> read_all(const fs::path& path) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) {
    throw Error(ErrorCode::FileNotFound, path.string());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Minimal PNM header tokenizer: whitespace-separated fields, '#' comments.
class PnmHeader {
 public:
  explicit PnmHeader(const std::vector<std::uint8_t>& bytes) : bytes_(bytes) {}

  int next_int() {
    skip_space_and_comments();
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) {
      throw Error(ErrorCode::CorruptImage, "malformed PNM header");
    }
    long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_++] - '0');
      if (value > (1L << 24)) throw Error(ErrorCode::CorruptImage, "PNM header value too large");
    }
    return static_cast<int>(value);
  }

  // Exactly one whitespace byte separates the header from the raster.
  std::size_t raster_offset() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      throw Error(ErrorCode::CorruptImage, "malformed PNM header");
    }
    return pos_ + 1;
  }

  void skip(std::size_t n) { pos_ += n; }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  const std::vector<std::uint8_t>& bytes_;
  std::size_t pos_ = 0;
};

Frame decode_pnm(const std::vector<std::uint8_t>& bytes) {
  const bool gray = bytes[1] == '5';
  PnmHeader header(bytes);
  header.skip(2);
  const int width = header.next_int();
  const int height = header.next_int();
  const int maxval = header.next_int();
  const std::size_t offset = header.raster_offset();
  if (width < 1 || height < 1) throw Error(ErrorCode::CorruptImage, "PNM has zero size");
  if (maxval != 255) {
    throw Error(ErrorCode::UnsupportedFormat, "only 8-bit PNM (maxval 255) is supported");
  }
  const std::size_t channels = gray ? 1 : 3;
  const std::size_t needed = static_cast<std::size_t>(width) * height * channels;
  if (bytes.size() - offset < needed) {
    throw Error(ErrorCode::CorruptImage, "truncated PNM raster");
  }
  const auto* raster = bytes.data() + offset;
  if (!gray) {
    return Frame(width, height, std::vector<std::uint8_t>(raster, raster + needed));
  }
  Frame frame(width, height);
  auto& out = frame.data();
  for (std::size_t i = 0; i < needed; ++i) {
    out[3 * i] = out[3 * i + 1] = out[3 * i + 2] = raster[i];
  }
  return frame;
}

Frame decode_png(const std::vector<std::uint8_t>& bytes) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
    throw Error(ErrorCode::CorruptImage, image.message);
  }
  image.format = PNG_FORMAT_RGB;
  if (image.width < 1 || image.height < 1 || image.width > (1u << 16) || image.height > (1u << 16)) {
    png_image_free(&image);
    throw Error(ErrorCode::CorruptImage, "PNG dimensions out of range");
  }
  std::vector<std::uint8_t> pixels(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, pixels.data(), 0, nullptr)) {
    const std::string message = image.message;
    png_image_free(&image);
    throw Error(ErrorCode::CorruptImage, message);
  }
  return Frame(static_cast<int>(image.width), static_cast<int>(image.height), std::move(pixels));
}

void write_bytes(const fs::path& path, const void* data, std::size_t size, const std::string& head) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  out.write(head.data(), static_cast<std::streamsize>(head.size()));
  out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

std::string lower_extension(const fs::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext;
}

}  // namespace

Frame load_frame(const fs::path& path) {
  const auto bytes = read_all(path);
  static constexpr std::array<std::uint8_t, 8> kPngSignature = {0x89, 'P', 'N', 'G',
                                                                 '\r', '\n', 0x1a, '\n'};
  if (bytes.size() >= kPngSignature.size() &&
      std::equal(kPngSignature.begin(), kPngSignature.end(), bytes.begin())) {
    return decode_png(bytes);
  }
  if (bytes.size() >= 2 && bytes[0] == 'P' && (bytes[1] == '6' || bytes[1] == '5')) {
    return decode_pnm(bytes);
  }
  throw Error(ErrorCode::UnsupportedFormat, path.string() + " is neither PNG nor binary PPM");
}

void save_frame(const Frame& frame, const fs::path& path) {
  const std::string ext = lower_extension(path);
  if (ext == ".ppm") {
    const std::string head = "P6\n" + std::to_string(frame.width()) + " " +
                             std::to_string(frame.height()) + "\n255\n";
    write_bytes(path, frame.data().data(), frame.data().size(), head);
    return;
  }
  if (ext != ".png") {
    throw Error(ErrorCode::UnsupportedFormat, "cannot infer image format from " + path.string());
  }
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(frame.width());
  image.height = static_cast<png_uint_32>(frame.height());
  image.format = PNG_FORMAT_RGB;
  png_alloc_size_t size = 0;
  if (!png_image_write_get_memory_size(image, size, 0, frame.data().data(), 0, nullptr)) {
    throw Error(ErrorCode::IoError, image.message);
  }
  std::vector<std::uint8_t> encoded(size);
  if (!png_image_write_to_memory(&image, encoded.data(), &size, 0, frame.data().data(), 0,
                                 nullptr)) {
    throw Error(ErrorCode::IoError, image.message);
  }
  write_bytes(path, encoded.data(), size, {});
}

std::string frame_file_name(std::size_t index, FrameFormat format) {
  char name[32];
  std::snprintf(name, sizeof(name), "frame_%06zu.%s", index,
                format == FrameFormat::Png ? "png" : "ppm");
  return name;
}

std::vector<Frame> load_frame_sequence(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw Error(ErrorCode::FileNotFound, dir.string());

  static const std::regex kPattern(R"(frame_(\d{6})\.(png|ppm))");
  std::map<std::size_t, fs::path> indexed;
  std::optional<std::string> extension;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    std::smatch match;
    if (!std::regex_match(name, match, kPattern)) continue;
    if (extension && *extension != match[2].str()) {
      throw Error(ErrorCode::BadSequence, "mixed frame extensions in " + dir.string());
    }
    extension = match[2].str();
    indexed.emplace(std::stoul(match[1].str()), entry.path());
  }
  if (indexed.empty()) throw Error(ErrorCode::EmptyVideo, "no frame files in " + dir.string());

  std::vector<Frame> frames;
  frames.reserve(indexed.size());
  std::size_t expected = 1;
  for (const auto& [index, path] : indexed) {
    if (index != expected) {
      throw Error(ErrorCode::BadSequence,
                  "frame indices must start at 1 and be contiguous; missing " +
                      frame_file_name(expected, extension == "png" ? FrameFormat::Png
                                                                   : FrameFormat::Ppm));
    }
    ++expected;
    frames.push_back(load_frame(path));
    if (!frames.back().same_size(frames.front())) {
      throw Error(ErrorCode::HeterogeneousDimensions, path.string());
    }
  }
  return frames;
}

void save_frame_sequence(const std::vector<Frame>& frames, const fs::path& dir,
                         FrameFormat format) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + dir.string() + ": " + ec.message());
  for (std::size_t i = 0; i < frames.size(); ++i) {
    save_frame(frames[i], dir / frame_file_name(i + 1, format));
  }
}

}  // namespace vidseal
