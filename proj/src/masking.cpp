#include "seamcut/masking.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace seamcut {

BinaryMask::BinaryMask(int width, int height, bool fill) : width_(width), height_(height) {
  if (width < 1 || height < 1) throw Error(ErrorKind::InvalidImage, "mask dimensions must be positive");
  bits_.assign(static_cast<std::size_t>(width) * height, fill ? 1 : 0);
}

BinaryMask::BinaryMask(int width, int height, std::vector<std::uint8_t> bits)
    : width_(width), height_(height), bits_(std::move(bits)) {
  if (width < 1 || height < 1) throw Error(ErrorKind::InvalidImage, "mask dimensions must be positive");
  if (bits_.size() != static_cast<std::size_t>(width) * height) {
    throw Error(ErrorKind::InvalidImage, "bit buffer size does not match mask dimensions");
  }
  for (auto& b : bits_) b = b ? 1 : 0;
}

std::size_t BinaryMask::count() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

BinaryMask BinaryMask::complement() const {
  std::vector<std::uint8_t> inv(bits_.size());
  std::transform(bits_.begin(), bits_.end(), inv.begin(), [](std::uint8_t b) -> std::uint8_t { return b ? 0 : 1; });
  return BinaryMask(width_, height_, std::move(inv));
}

TriMap::TriMap(int width, int height, std::vector<PixelState> states, bool degenerate)
    : width_(width), height_(height), states_(std::move(states)), degenerate_(degenerate) {
  if (states_.size() != static_cast<std::size_t>(width) * height) {
    throw Error(ErrorKind::DimensionMismatch, "trimap state buffer does not match dimensions");
  }
  index_.assign(states_.size(), -1);
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * width_ + x;
      if (states_[i] == PixelState::Ambiguous) {
        index_[i] = static_cast<int>(ambiguous_.size());
        ambiguous_.push_back({x, y});
      }
    }
  }
}

std::vector<std::uint8_t> TriMap::to_gray8() const {
  std::vector<std::uint8_t> out(states_.size());
  std::transform(states_.begin(), states_.end(), out.begin(), [](PixelState s) -> std::uint8_t {
    switch (s) {
      case PixelState::FixedBackground: return 0;
      case PixelState::Ambiguous: return 128;
      case PixelState::FixedForeground: return 255;
    }
    return 0;
  });
  return out;
}

BinaryMask select_instance(const InstanceMask& mask, Point click) {
  if (!mask.contains(click)) {
    throw Error(ErrorKind::OutOfBounds, "click (" + std::to_string(click.x) + "," +
                                            std::to_string(click.y) + ") outside " +
                                            std::to_string(mask.width()) + "x" +
                                            std::to_string(mask.height()) + " mask");
  }
  const std::uint32_t id = mask.at(click.x, click.y);
  if (id == 0) {
    throw Error(ErrorKind::NoInstanceAtPoint, "click (" + std::to_string(click.x) + "," +
                                                  std::to_string(click.y) + ") lands on background");
  }
  return select_instance_id(mask, id);
}

BinaryMask select_instance_id(const InstanceMask& mask, std::uint32_t id) {
  if (id == 0) throw Error(ErrorKind::NoInstanceAtPoint, "instance id 0 is background");
  std::vector<std::uint8_t> bits(mask.ids().size());
  std::transform(mask.ids().begin(), mask.ids().end(), bits.begin(),
                 [id](std::uint32_t v) -> std::uint8_t { return v == id ? 1 : 0; });
  BinaryMask out(mask.width(), mask.height(), std::move(bits));
  if (out.count() == 0) {
    throw Error(ErrorKind::NoInstanceAtPoint, "instance id " + std::to_string(id) + " not present in mask");
  }
  return out;
}

namespace {

constexpr double kUnreached = std::numeric_limits<double>::infinity();

// One-dimensional squared-distance transform: out[q] = min_p (q - p)^2 + f[p] over
// finite f[p]. Buffers are caller-provided scratch of length n (+1 for bounds).
void squared_dt_1d(std::span<const double> f, std::span<double> out, std::vector<int>& sites,
                   std::vector<double>& bounds) {
  const int n = static_cast<int>(f.size());
  sites.clear();
  bounds.clear();
  for (int q = 0; q < n; ++q) {
    if (f[q] == kUnreached) continue;
    const double fq = f[q] + static_cast<double>(q) * q;
    double s = -kUnreached;
    while (!sites.empty()) {
      const int v = sites.back();
      s = (fq - (f[v] + static_cast<double>(v) * v)) / (2.0 * (q - v));
      if (s > bounds.back()) break;
      sites.pop_back();
      bounds.pop_back();
      s = -kUnreached;
    }
    sites.push_back(q);
    bounds.push_back(s);
  }
  if (sites.empty()) {
    std::fill(out.begin(), out.end(), kUnreached);
    return;
  }
  std::size_t k = 0;
  for (int q = 0; q < n; ++q) {
    while (k + 1 < sites.size() && bounds[k + 1] < q) ++k;
    const double d = q - sites[k];
    out[q] = d * d + f[sites[k]];
  }
}

}  // namespace

DistanceField distance_transform(const BinaryMask& seeds) {
  if (seeds.count() == 0) throw Error(ErrorKind::EmptyRegion, "distance transform needs at least one seed");
  const int w = seeds.width();
  const int h = seeds.height();
  std::vector<double> sq(static_cast<std::size_t>(w) * h);

  std::vector<int> sites;
  std::vector<double> bounds;
  std::vector<double> column(h);
  std::vector<double> column_out(h);
  for (int x = 0; x < w; ++x) {
    for (int y = 0; y < h; ++y) column[y] = seeds.at(x, y) ? 0.0 : kUnreached;
    squared_dt_1d(column, column_out, sites, bounds);
    for (int y = 0; y < h; ++y) sq[static_cast<std::size_t>(y) * w + x] = column_out[y];
  }

  std::vector<double> row_out(w);
  for (int y = 0; y < h; ++y) {
    std::span<double> row(sq.data() + static_cast<std::size_t>(y) * w, static_cast<std::size_t>(w));
    squared_dt_1d(row, row_out, sites, bounds);
    std::copy(row_out.begin(), row_out.end(), row.begin());
  }
  for (double& v : sq) v = std::sqrt(v);
  return DistanceField(w, h, std::move(sq));
}

TriMap compute_band(const BinaryMask& object, double radius) {
  if (!std::isfinite(radius) || radius < 0.0) {
    throw Error(ErrorKind::InvalidParams, "band radius must be finite and non-negative");
  }
  const int w = object.width();
  const int h = object.height();
  std::vector<PixelState> states(object.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    states[i] = object.bits()[i] ? PixelState::FixedForeground : PixelState::FixedBackground;
  }
  const std::size_t population = object.count();
  if (population == 0 || population == object.size()) {
    return TriMap(w, h, std::move(states), /*degenerate=*/true);
  }

  const DistanceField to_object = distance_transform(object);
  const DistanceField to_background = distance_transform(object.complement());
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (to_object.values()[i] <= radius && to_background.values()[i] <= radius) {
      states[i] = PixelState::Ambiguous;
    }
  }
  return TriMap(w, h, std::move(states));
}

}  // namespace seamcut
