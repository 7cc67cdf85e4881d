#pragma once

#include "seamcut/imagery.hpp"

namespace seamcut {

/// Posterize-and-ink filter standing in for a learned style transfer.
struct StylizeParams {
  int levels = 4;               // quantization levels per channel, >= 2
  double edge_strength = 0.6;   // fraction removed from edge pixels, in [0,1]
  double edge_threshold = 1.0;  // Sobel magnitude cutoff on the channel-mean image
};

void validate(const StylizeParams& params);

RgbImage stylize(const RgbImage& img, const StylizeParams& params);

}  // namespace seamcut
