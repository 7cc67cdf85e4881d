#include "seamcut/mrf.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace seamcut {

EnergyModel::EnergyModel(std::vector<Point> pixels, std::vector<Unary> unary,
                         std::vector<PinnedNode> pinned, std::vector<Edge> edges, double lambda,
                         Connectivity connectivity)
    : pixels_(std::move(pixels)),
      unary_(std::move(unary)),
      pinned_(std::move(pinned)),
      edges_(std::move(edges)),
      lambda_(lambda),
      connectivity_(connectivity) {
  if (unary_.size() != pixels_.size()) {
    throw Error(ErrorKind::LengthMismatch, "one unary pair is required per ambiguous pixel");
  }
}

void EnergyModel::validate() const {
  auto bad = [](const std::string& what) { throw Error(ErrorKind::MalformedModel, what); };
  if (!std::isfinite(lambda_) || lambda_ < 0.0) bad("lambda must be finite and non-negative");
  for (const Unary& u : unary_) {
    if (!std::isfinite(u.fg) || !std::isfinite(u.bg) || u.fg < 0.0 || u.bg < 0.0) {
      bad("unary costs must be finite and non-negative");
    }
  }
  const auto nodes = static_cast<long long>(node_count());
  std::unordered_set<long long> seen;
  seen.reserve(edges_.size() * 2);
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    const Edge& e = edges_[k];
    if (e.i < 0 || e.j < 0 || e.i >= nodes || e.j >= nodes) bad("edge " + std::to_string(k) + " has an invalid endpoint");
    if (e.i == e.j) bad("edge " + std::to_string(k) + " is a self loop");
    if (is_pinned(e.i) && is_pinned(e.j)) bad("edge " + std::to_string(k) + " joins two fixed pixels");
    if (!std::isfinite(e.w) || e.w < 0.0) bad("edge " + std::to_string(k) + " has a negative or non-finite weight");
    const long long key = std::min(e.i, e.j) * nodes + std::max(e.i, e.j);
    if (!seen.insert(key).second) bad("edge " + std::to_string(k) + " duplicates an earlier pair");
  }
}

double discontinuity(const RgbImage& original, const RgbImage& stylized, int x, int y) noexcept {
  double d = 0.0;
  for (int c = 0; c < 3; ++c) {
    const double diff = stylized.channel(x, y, c) - original.channel(x, y, c);
    d += diff * diff;
  }
  return d;
}

EnergyModel build_energy(const RgbImage& original, const RgbImage& stylized, const TriMap& trimap,
                         double lambda, Connectivity connectivity) {
  const int w = trimap.width();
  const int h = trimap.height();
  if (original.width() != w || original.height() != h || stylized.width() != w ||
      stylized.height() != h) {
    throw Error(ErrorKind::DimensionMismatch, "original, stylized and trimap dimensions differ");
  }
  if (!std::isfinite(lambda) || lambda < 0.0) {
    throw Error(ErrorKind::InvalidParams, "lambda must be finite and non-negative");
  }

  const auto ambiguous = trimap.ambiguous_pixels();
  std::vector<Point> pixels(ambiguous.begin(), ambiguous.end());
  std::vector<Unary> unary(pixels.size());

  if (!pixels.empty()) {
    // A fixed region that is empty (small objects fully inside the band) gets the image
    // diagonal, an upper bound on every in-image distance.
    const double diagonal = std::hypot(static_cast<double>(w), static_cast<double>(h));
    BinaryMask fixed_fg(w, h);
    BinaryMask fixed_bg(w, h);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        fixed_fg.set(x, y, trimap.at(x, y) == PixelState::FixedForeground);
        fixed_bg.set(x, y, trimap.at(x, y) == PixelState::FixedBackground);
      }
    }
    auto sample = [&](const BinaryMask& region, auto&& assign) {
      if (region.count() == 0) {
        for (auto& u : unary) assign(u, diagonal);
        return;
      }
      const DistanceField field = distance_transform(region);
      for (std::size_t k = 0; k < pixels.size(); ++k) assign(unary[k], field.at(pixels[k].x, pixels[k].y));
    };
    sample(fixed_fg, [](Unary& u, double v) { u.fg = v; });
    sample(fixed_bg, [](Unary& u, double v) { u.bg = v; });
  }

  std::vector<PinnedNode> pinned;
  std::unordered_map<int, int> pinned_index;  // flat pixel index -> node id
  const int n = static_cast<int>(pixels.size());
  auto node_for = [&](int x, int y) -> int {
    const int amb = trimap.ambiguous_index(x, y);
    if (amb >= 0) return amb;
    const int flat = y * w + x;
    auto [it, inserted] = pinned_index.try_emplace(flat, n + static_cast<int>(pinned.size()));
    if (inserted) {
      const Label l = trimap.at(x, y) == PixelState::FixedForeground ? Label::Foreground : Label::Background;
      pinned.push_back({{x, y}, l});
    }
    return it->second;
  };

  // Forward half-neighborhood so every unordered pair is visited once.
  static constexpr Point kFour[] = {{1, 0}, {0, 1}};
  static constexpr Point kEight[] = {{1, 0}, {0, 1}, {1, 1}, {-1, 1}};
  const std::span<const Point> offsets =
      connectivity == Connectivity::Four ? std::span<const Point>(kFour) : std::span<const Point>(kEight);

  std::vector<Edge> edges;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const bool p_amb = trimap.ambiguous_index(x, y) >= 0;
      for (const Point& o : offsets) {
        const int qx = x + o.x;
        const int qy = y + o.y;
        if (qx < 0 || qy < 0 || qx >= w || qy >= h) continue;
        if (!p_amb && trimap.ambiguous_index(qx, qy) < 0) continue;
        const double weight = discontinuity(original, stylized, x, y) + discontinuity(original, stylized, qx, qy);
        const int i = node_for(x, y);
        const int j = node_for(qx, qy);
        edges.push_back({i, j, weight});
      }
    }
  }

  return EnergyModel(std::move(pixels), std::move(unary), std::move(pinned), std::move(edges), lambda,
                     connectivity);
}

double total_energy(const EnergyModel& model, const Labeling& labeling) {
  if (labeling.size() != model.size()) {
    throw Error(ErrorKind::LengthMismatch, "labeling has " + std::to_string(labeling.size()) +
                                               " entries, model has " + std::to_string(model.size()));
  }
  double unary = 0.0;
  for (std::size_t k = 0; k < labeling.size(); ++k) unary += model.unary()[k].cost(labeling[k]);
  double pairwise = 0.0;
  for (const Edge& e : model.edges()) {
    if (model.label_of(e.i, labeling) != model.label_of(e.j, labeling)) pairwise += e.w;
  }
  return unary + model.lambda() * pairwise;
}

double pairwise_cost(const EnergyModel& model, std::size_t edge, Label l1, Label l2) {
  if (edge >= model.edges().size()) {
    throw Error(ErrorKind::IndexOutOfRange, "edge index " + std::to_string(edge) + " out of range");
  }
  return l1 == l2 ? 0.0 : model.lambda() * model.edges()[edge].w;
}

void write_energy_dump(const EnergyModel& model, std::ostream& out) {
  char line[160];
  for (std::size_t k = 0; k < model.size(); ++k) {
    const Point p = model.pixels()[k];
    std::snprintf(line, sizeof(line), "pixel %d %d %.17g %.17g\n", p.x, p.y, model.unary()[k].fg,
                  model.unary()[k].bg);
    out << line;
  }
  for (const PinnedNode& pin : model.pinned()) {
    std::snprintf(line, sizeof(line), "pinned %d %d %s\n", pin.pixel.x, pin.pixel.y,
                  pin.label == Label::Foreground ? "fg" : "bg");
    out << line;
  }
  for (const Edge& e : model.edges()) {
    std::snprintf(line, sizeof(line), "edge %d %d %.17g\n", e.i, e.j, e.w);
    out << line;
  }
}

}  // namespace seamcut
