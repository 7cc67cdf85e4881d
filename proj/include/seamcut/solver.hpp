#pragma once

#include <cstddef>
#include <string_view>

#include "seamcut/masking.hpp"
#include "seamcut/mrf.hpp"

namespace seamcut {

enum class SolveMethod { MinCut, Icm, Oracle, Naive };

std::string_view to_string(SolveMethod method) noexcept;

struct SolveStats {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  /// Augmenting paths (MinCut), sweeps (Icm) or labelings evaluated (Oracle).
  std::size_t iterations = 0;
  /// MinCut only: value of the maximum flow, i.e. the optimum minus the constant
  /// sum of per-pixel min(u_fg, u_bg) left out of the graph.
  double flow = 0.0;
};

struct SolveResult {
  Labeling labeling;
  double energy = 0.0;  // total_energy(model, labeling)
  SolveMethod method = SolveMethod::MinCut;
  SolveStats stats;
};

/// Upper bound on ambiguous pixels accepted by solve_oracle.
inline constexpr std::size_t kOracleMaxPixels = 25;

/// Capacity standing in for the infinite terminal edge of a pinned pixel.
inline constexpr double kPinCapacity = 1e30;

/// Exact global minimum by a single s-t min-cut (source = Foreground).
SolveResult solve_mincut(const EnergyModel& model);

/// Iterated conditional modes from `init`, row-major single-pixel flips.
SolveResult solve_icm(const EnergyModel& model, const Labeling& init, std::size_t max_sweeps);

/// Exhaustive search over all 2^n labelings. Ties go to the lexicographically smallest
/// assignment (Background < Foreground).
SolveResult solve_oracle(const EnergyModel& model);

/// Keeps the segmentation label of every ambiguous pixel.
SolveResult solve_naive(const EnergyModel& model, const TriMap& trimap, const BinaryMask& object);

}  // namespace seamcut
