#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "seamcut/imagery.hpp"

namespace seamcut {

/// Per-pixel boolean region (true = selected object), row-major.
class BinaryMask {
 public:
  BinaryMask(int width, int height, bool fill = false);
  BinaryMask(int width, int height, std::vector<std::uint8_t> bits);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return bits_.size(); }

  bool at(int x, int y) const noexcept { return bits_[index(x, y)] != 0; }
  void set(int x, int y, bool v) noexcept { bits_[index(x, y)] = v ? 1 : 0; }
  std::size_t count() const noexcept;
  BinaryMask complement() const;
  std::span<const std::uint8_t> bits() const noexcept { return bits_; }

  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

 private:
  std::size_t index(int x, int y) const noexcept { return static_cast<std::size_t>(y) * width_ + x; }

  int width_;
  int height_;
  std::vector<std::uint8_t> bits_;
};

/// Euclidean distance (pixel units) from every pixel center to the nearest seed.
class DistanceField {
 public:
  DistanceField(int width, int height, std::vector<double> dist)
      : width_(width), height_(height), dist_(std::move(dist)) {}

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  double at(int x, int y) const noexcept { return dist_[static_cast<std::size_t>(y) * width_ + x]; }
  std::span<const double> values() const noexcept { return dist_; }

 private:
  int width_;
  int height_;
  std::vector<double> dist_;
};

enum class PixelState : std::uint8_t { FixedBackground, Ambiguous, FixedForeground };

class TriMap {
 public:
  TriMap(int width, int height, std::vector<PixelState> states, bool degenerate = false);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  PixelState at(int x, int y) const noexcept { return states_[static_cast<std::size_t>(y) * width_ + x]; }
  std::span<const PixelState> states() const noexcept { return states_; }

  /// Ambiguous pixels in row-major scan order.
  std::span<const Point> ambiguous_pixels() const noexcept { return ambiguous_; }
  /// Index into ambiguous_pixels(), or -1 for fixed pixels.
  int ambiguous_index(int x, int y) const noexcept { return index_[static_cast<std::size_t>(y) * width_ + x]; }

  /// Set when the object covered nothing or everything, so no band exists.
  bool degenerate() const noexcept { return degenerate_; }

  /// Debug rendering: FixedBackground=0, Ambiguous=128, FixedForeground=255.
  std::vector<std::uint8_t> to_gray8() const;

 private:
  int width_;
  int height_;
  std::vector<PixelState> states_;
  std::vector<Point> ambiguous_;
  std::vector<int> index_;
  bool degenerate_;
};

BinaryMask select_instance(const InstanceMask& mask, Point click);
/// Same as select_instance but addressed by id; id 0 or an absent id is NoInstanceAtPoint.
BinaryMask select_instance_id(const InstanceMask& mask, std::uint32_t id);

/// Exact Euclidean distance transform (separable lower-envelope method).
DistanceField distance_transform(const BinaryMask& seeds);

/// Ambiguous iff within `radius` of both the object and its complement.
TriMap compute_band(const BinaryMask& object, double radius);

}  // namespace seamcut
