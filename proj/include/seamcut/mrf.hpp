#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "seamcut/imagery.hpp"
#include "seamcut/masking.hpp"

namespace seamcut {

/// Background orders before Foreground; the oracle's tie-break relies on it.
enum class Label : std::uint8_t { Background = 0, Foreground = 1 };

constexpr Label opposite(Label l) noexcept {
  return l == Label::Foreground ? Label::Background : Label::Foreground;
}

enum class Connectivity { Four = 4, Eight = 8 };

struct Unary {
  double fg = 0.0;  // cost of labeling the pixel Foreground
  double bg = 0.0;

  double cost(Label l) const noexcept { return l == Label::Foreground ? fg : bg; }
};

/// Neighbor pair in node space. Nodes [0, n) are ambiguous pixels, nodes [n, n + m) are
/// fixed pixels pinned to their segmentation label.
struct Edge {
  int i = 0;
  int j = 0;
  double w = 0.0;  // d(p) + d(q); the pairwise cost when labels differ, before lambda
};

struct PinnedNode {
  Point pixel;
  Label label = Label::Background;
};

using Labeling = std::vector<Label>;

/// Binary MRF over the ambiguous band:
///
///   E(l) = sum_p U(p, l_p) + lambda * sum_{(p,q)} [l_p != l_q] * (d(p) + d(q))
///
/// where U(p, l) is the Euclidean distance from p to the nearest fixed pixel with
/// label l, and d(p) = |stylized(p) - original(p)|^2 summed over channels.
class EnergyModel {
 public:
  EnergyModel(std::vector<Point> pixels, std::vector<Unary> unary, std::vector<PinnedNode> pinned,
              std::vector<Edge> edges, double lambda, Connectivity connectivity);

  std::size_t size() const noexcept { return pixels_.size(); }
  std::size_t node_count() const noexcept { return pixels_.size() + pinned_.size(); }

  std::span<const Point> pixels() const noexcept { return pixels_; }
  std::span<const Unary> unary() const noexcept { return unary_; }
  std::span<const PinnedNode> pinned() const noexcept { return pinned_; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  double lambda() const noexcept { return lambda_; }
  Connectivity connectivity() const noexcept { return connectivity_; }

  bool is_pinned(int node) const noexcept { return node >= static_cast<int>(pixels_.size()); }
  /// Label of node `node` under `labeling`, resolving pinned nodes to their fixed label.
  Label label_of(int node, const Labeling& labeling) const noexcept {
    return is_pinned(node) ? pinned_[node - pixels_.size()].label : labeling[node];
  }

  /// Throws MalformedModel on negative or non-finite costs, bad indices, self loops,
  /// fixed-fixed edges or duplicate unordered pairs.
  void validate() const;

 private:
  std::vector<Point> pixels_;
  std::vector<Unary> unary_;
  std::vector<PinnedNode> pinned_;
  std::vector<Edge> edges_;
  double lambda_;
  Connectivity connectivity_;
};

/// Per-pixel stylization discontinuity d(p), summed squared channel differences.
double discontinuity(const RgbImage& original, const RgbImage& stylized, int x, int y) noexcept;

EnergyModel build_energy(const RgbImage& original, const RgbImage& stylized, const TriMap& trimap,
                         double lambda, Connectivity connectivity);

double total_energy(const EnergyModel& model, const Labeling& labeling);

double pairwise_cost(const EnergyModel& model, std::size_t edge, Label l1, Label l2);

/// Text dump: "pixel x y u_fg u_bg", "pinned x y fg|bg" and "edge i j w" lines.
void write_energy_dump(const EnergyModel& model, std::ostream& out);

}  // namespace seamcut
