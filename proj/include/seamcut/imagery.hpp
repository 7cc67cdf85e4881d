#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "seamcut/error.hpp"

namespace seamcut {

struct Point {
  int x = 0;
  int y = 0;
  friend bool operator==(const Point&, const Point&) = default;
};

using Rgb = std::array<double, 3>;

/// Dense row-major RGB image with channel values in [0,1].
class RgbImage {
 public:
  RgbImage(int width, int height, Rgb fill = {0.0, 0.0, 0.0});
  /// `data` holds width*height*3 interleaved channels; every value must lie in [0,1].
  RgbImage(int width, int height, std::vector<double> data);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t pixel_count() const noexcept { return static_cast<std::size_t>(width_) * height_; }

  bool contains(Point p) const noexcept { return p.x >= 0 && p.y >= 0 && p.x < width_ && p.y < height_; }

  Rgb at(int x, int y) const noexcept {
    const std::size_t i = offset(x, y);
    return {data_[i], data_[i + 1], data_[i + 2]};
  }
  double channel(int x, int y, int c) const noexcept { return data_[offset(x, y) + c]; }
  /// Values are clamped into [0,1].
  void set(int x, int y, const Rgb& v) noexcept;

  std::span<const double> data() const noexcept { return data_; }

  friend bool operator==(const RgbImage&, const RgbImage&) = default;

 private:
  std::size_t offset(int x, int y) const noexcept {
    return (static_cast<std::size_t>(y) * width_ + x) * 3;
  }

  int width_;
  int height_;
  std::vector<double> data_;
};

/// Per-pixel instance identifiers; 0 is background.
class InstanceMask {
 public:
  InstanceMask(int width, int height, std::uint32_t fill = 0);
  InstanceMask(int width, int height, std::vector<std::uint32_t> ids);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  bool contains(Point p) const noexcept { return p.x >= 0 && p.y >= 0 && p.x < width_ && p.y < height_; }

  std::uint32_t at(int x, int y) const noexcept { return ids_[static_cast<std::size_t>(y) * width_ + x]; }
  void set(int x, int y, std::uint32_t id) noexcept { ids_[static_cast<std::size_t>(y) * width_ + x] = id; }
  std::span<const std::uint32_t> ids() const noexcept { return ids_; }

  friend bool operator==(const InstanceMask&, const InstanceMask&) = default;

 private:
  int width_;
  int height_;
  std::vector<std::uint32_t> ids_;
};

enum class ImageFormat { Png, Ppm };

/// Channel quantization used by every writer: round(v*255) with halves rounded up, clamped.
std::uint8_t quantize_channel(double v) noexcept;

/// Guess the output format from a path extension (".ppm" -> Ppm, anything else -> Png).
ImageFormat format_for_path(const std::filesystem::path& path);

/// Accepts 8-bit RGB PNG or binary PPM (P6, maxval 255); channels map to c/255.
RgbImage load_image(const std::filesystem::path& path);
void save_image(const RgbImage& img, const std::filesystem::path& path, ImageFormat format);

/// Accepts 8/16-bit grayscale PNG or binary PGM (P5); pixel values are the ids.
InstanceMask load_mask(const std::filesystem::path& path);
/// Writes 8-bit when every id fits, 16-bit otherwise. Ids above 65535 are rejected.
void save_mask(const InstanceMask& mask, const std::filesystem::path& path, ImageFormat format);

/// Raw 8-bit grayscale writer (debug renderings such as the trimap).
void save_gray8(std::span<const std::uint8_t> pixels, int width, int height,
                const std::filesystem::path& path, ImageFormat format);

}  // namespace seamcut
