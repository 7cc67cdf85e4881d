#include "seamcut/stylize.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace seamcut {

void validate(const StylizeParams& params) {
  if (params.levels < 2) throw Error(ErrorKind::InvalidParams, "levels must be at least 2");
  if (!(params.edge_strength >= 0.0 && params.edge_strength <= 1.0)) {
    throw Error(ErrorKind::InvalidParams, "edge_strength must lie in [0,1]");
  }
  if (!(params.edge_threshold >= 0.0) || std::isnan(params.edge_threshold)) {
    throw Error(ErrorKind::InvalidParams, "edge_threshold must be non-negative");
  }
}

RgbImage stylize(const RgbImage& img, const StylizeParams& params) {
  validate(params);
  const int w = img.width();
  const int h = img.height();
  const double steps = params.levels - 1;

  RgbImage out(w, h);
  std::vector<double> gray(static_cast<std::size_t>(w) * h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      Rgb v = img.at(x, y);
      for (double& c : v) c = std::round(c * steps) / steps;
      out.set(x, y, v);
      gray[static_cast<std::size_t>(y) * w + x] = (v[0] + v[1] + v[2]) / 3.0;
    }
  }
  if (params.edge_strength == 0.0) return out;

  // Sobel on the posterized channel mean, borders replicated.
  auto g = [&](int x, int y) {
    x = std::clamp(x, 0, w - 1);
    y = std::clamp(y, 0, h - 1);
    return gray[static_cast<std::size_t>(y) * w + x];
  };
  const double keep = 1.0 - params.edge_strength;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double gx = (g(x + 1, y - 1) + 2.0 * g(x + 1, y) + g(x + 1, y + 1)) -
                        (g(x - 1, y - 1) + 2.0 * g(x - 1, y) + g(x - 1, y + 1));
      const double gy = (g(x - 1, y + 1) + 2.0 * g(x, y + 1) + g(x + 1, y + 1)) -
                        (g(x - 1, y - 1) + 2.0 * g(x, y - 1) + g(x + 1, y - 1));
      if (std::sqrt(gx * gx + gy * gy) > params.edge_threshold) {
        Rgb v = out.at(x, y);
        for (double& c : v) c *= keep;
        out.set(x, y, v);
      }
    }
  }
  return out;
}

}  // namespace seamcut
