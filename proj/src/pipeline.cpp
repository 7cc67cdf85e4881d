#include "seamcut/pipeline.hpp"

#include <string>

namespace seamcut {

namespace {

void require_same_size(const RgbImage& img, const TriMap& trimap, const char* what) {
  if (img.width() != trimap.width() || img.height() != trimap.height()) {
    throw Error(ErrorKind::DimensionMismatch,
                std::string(what) + " is " + std::to_string(img.width()) + "x" + std::to_string(img.height()) +
                    ", trimap is " + std::to_string(trimap.width()) + "x" + std::to_string(trimap.height()));
  }
}

}  // namespace

BinaryMask resolve_selection(const InstanceMask& mask, const Selection& selection) {
  if (const auto* click = std::get_if<Point>(&selection)) return select_instance(mask, *click);
  return select_instance_id(mask, std::get<InstanceId>(selection).value);
}

std::vector<Label> expand_labels(const TriMap& trimap, const Labeling& labeling) {
  if (labeling.size() != trimap.ambiguous_pixels().size()) {
    throw Error(ErrorKind::LengthMismatch, "labeling has " + std::to_string(labeling.size()) +
                                               " entries, band has " +
                                               std::to_string(trimap.ambiguous_pixels().size()));
  }
  std::vector<Label> labels(trimap.states().size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    labels[i] = trimap.states()[i] == PixelState::FixedForeground ? Label::Foreground : Label::Background;
  }
  const auto amb = trimap.ambiguous_pixels();
  for (std::size_t k = 0; k < amb.size(); ++k) {
    labels[static_cast<std::size_t>(amb[k].y) * trimap.width() + amb[k].x] = labeling[k];
  }
  return labels;
}

RgbImage composite(const RgbImage& original, const RgbImage& stylized, const TriMap& trimap,
                   const Labeling& labeling) {
  require_same_size(original, trimap, "original");
  require_same_size(stylized, trimap, "stylized");
  const auto labels = expand_labels(trimap, labeling);
  RgbImage out = original;
  for (int y = 0; y < trimap.height(); ++y) {
    for (int x = 0; x < trimap.width(); ++x) {
      if (labels[static_cast<std::size_t>(y) * trimap.width() + x] == Label::Foreground) {
        out.set(x, y, stylized.at(x, y));
      }
    }
  }
  return out;
}

BlendOutcome blend_detailed(const RgbImage& original, const RgbImage& stylized, const InstanceMask& mask,
                            const BlendConfig& config) {
  if (original.width() != stylized.width() || original.height() != stylized.height() ||
      original.width() != mask.width() || original.height() != mask.height()) {
    throw Error(ErrorKind::DimensionMismatch, "original, stylized and mask dimensions differ");
  }
  BinaryMask object = resolve_selection(mask, config.selection);
  TriMap trimap = compute_band(object, config.radius);
  EnergyModel model = build_energy(original, stylized, trimap, config.lambda, config.connectivity);

  SolveResult result;
  switch (config.solver) {
    case SolveMethod::MinCut:
      result = solve_mincut(model);
      break;
    case SolveMethod::Oracle:
      result = solve_oracle(model);
      break;
    case SolveMethod::Naive:
      result = solve_naive(model, trimap, object);
      break;
    case SolveMethod::Icm:
      result = solve_icm(model, solve_naive(model, trimap, object).labeling, config.icm_max_sweeps);
      break;
  }
  RgbImage output = composite(original, stylized, trimap, result.labeling);
  return {std::move(output), std::move(result), std::move(object), std::move(trimap), std::move(model)};
}

RgbImage render_seam_overlay(const RgbImage& original, const TriMap& trimap, const Labeling& labeling) {
  require_same_size(original, trimap, "original");
  const auto labels = expand_labels(trimap, labeling);
  const int w = trimap.width();
  const int h = trimap.height();
  auto label = [&](int x, int y) { return labels[static_cast<std::size_t>(y) * w + x]; };
  RgbImage out = original;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const Label l = label(x, y);
      const bool seam = (x > 0 && label(x - 1, y) != l) || (x + 1 < w && label(x + 1, y) != l) ||
                        (y > 0 && label(x, y - 1) != l) || (y + 1 < h && label(x, y + 1) != l);
      if (seam) out.set(x, y, {1.0, 0.0, 0.0});
    }
  }
  return out;
}

}  // namespace seamcut
