#pragma once

#include <cstdint>
#include <optional>
#include <variant>

#include "seamcut/imagery.hpp"
#include "seamcut/masking.hpp"
#include "seamcut/mrf.hpp"
#include "seamcut/solver.hpp"

namespace seamcut {

struct InstanceId {
  std::uint32_t value = 0;
};

/// Either a click position or an explicit instance id.
using Selection = std::variant<Point, InstanceId>;

struct BlendConfig {
  double radius = 5.0;
  double lambda = 1.0;
  Connectivity connectivity = Connectivity::Four;
  SolveMethod solver = SolveMethod::MinCut;
  Selection selection = InstanceId{1};
  std::size_t icm_max_sweeps = 100;
};

/// Everything produced along the way; `output` is the composite.
struct BlendOutcome {
  RgbImage output;
  SolveResult result;
  BinaryMask object;
  TriMap trimap;
  EnergyModel model;
};

BinaryMask resolve_selection(const InstanceMask& mask, const Selection& selection);

/// Final label of every pixel: fixed pixels keep their trimap side.
std::vector<Label> expand_labels(const TriMap& trimap, const Labeling& labeling);

RgbImage composite(const RgbImage& original, const RgbImage& stylized, const TriMap& trimap,
                   const Labeling& labeling);

BlendOutcome blend_detailed(const RgbImage& original, const RgbImage& stylized, const InstanceMask& mask,
                            const BlendConfig& config);

inline std::pair<RgbImage, SolveResult> blend(const RgbImage& original, const RgbImage& stylized,
                                             const InstanceMask& mask, const BlendConfig& config) {
  BlendOutcome out = blend_detailed(original, stylized, mask, config);
  return {std::move(out.output), std::move(out.result)};
}

/// Original image with pure red painted on pixels whose 4-neighbor has the other label.
RgbImage render_seam_overlay(const RgbImage& original, const TriMap& trimap, const Labeling& labeling);

}  // namespace seamcut
