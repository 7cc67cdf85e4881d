#pragma once

// Random instance generators shared by the unit and acceptance suites.

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "seamcut/imagery.hpp"
#include "seamcut/masking.hpp"

namespace seamcut::testing {

using Rng = std::mt19937_64;

inline int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
inline double uniform_real(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// 8-bit-representable random image.
inline RgbImage random_image(Rng& rng, int w, int h) {
  std::vector<double> data(static_cast<std::size_t>(w) * h * 3);
  for (double& v : data) v = uniform_int(rng, 0, 255) / 255.0;
  return RgbImage(w, h, std::move(data));
}

/// Smooth random image: a few color gradients plus noise, closer to photographs.
inline RgbImage smooth_image(Rng& rng, int w, int h) {
  RgbImage img(w, h);
  Rgb base{uniform_real(rng, 0, 1), uniform_real(rng, 0, 1), uniform_real(rng, 0, 1)};
  Rgb gx{uniform_real(rng, -1, 1), uniform_real(rng, -1, 1), uniform_real(rng, -1, 1)};
  Rgb gy{uniform_real(rng, -1, 1), uniform_real(rng, -1, 1), uniform_real(rng, -1, 1)};
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      Rgb v;
      for (int c = 0; c < 3; ++c) {
        const double raw = base[c] + gx[c] * x / w + gy[c] * y / h + uniform_real(rng, -0.05, 0.05);
        v[c] = quantize_channel(std::clamp(raw, 0.0, 1.0)) / 255.0;
      }
      img.set(x, y, v);
    }
  }
  return img;
}

inline BinaryMask random_noise_mask(Rng& rng, int w, int h, double p = 0.5) {
  std::bernoulli_distribution coin(p);
  BinaryMask m(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) m.set(x, y, coin(rng));
  return m;
}

/// Random filled ellipse or rectangle, never empty.
inline BinaryMask random_blob_mask(Rng& rng, int w, int h) {
  BinaryMask m(w, h);
  const double cx = uniform_real(rng, 0.25 * w, 0.75 * w);
  const double cy = uniform_real(rng, 0.25 * h, 0.75 * h);
  const double rx = uniform_real(rng, 1.0, 0.45 * w);
  const double ry = uniform_real(rng, 1.0, 0.45 * h);
  const bool ellipse = uniform_int(rng, 0, 1) == 1;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double dx = (x - cx) / rx;
      const double dy = (y - cy) / ry;
      m.set(x, y, ellipse ? dx * dx + dy * dy <= 1.0 : std::abs(dx) <= 1.0 && std::abs(dy) <= 1.0);
    }
  }
  m.set(static_cast<int>(cx), static_cast<int>(cy), true);
  return m;
}

inline BinaryMask random_mask(Rng& rng, int w, int h) {
  return uniform_int(rng, 0, 2) == 0 ? random_noise_mask(rng, w, h, uniform_real(rng, 0.2, 0.8))
                                     : random_blob_mask(rng, w, h);
}

inline bool nondegenerate(const BinaryMask& m) { return m.count() > 0 && m.count() < m.size(); }

inline InstanceMask to_instance_mask(const BinaryMask& m, std::uint32_t id = 1) {
  InstanceMask out(m.width(), m.height());
  for (int y = 0; y < m.height(); ++y)
    for (int x = 0; x < m.width(); ++x) out.set(x, y, m.at(x, y) ? id : 0);
  return out;
}

/// Fresh scratch directory under the system temp path.
inline std::filesystem::path scratch_dir(const std::string& tag) {
  static int counter = 0;
  auto dir = std::filesystem::temp_directory_path() /
             ("seamcut-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace seamcut::testing
