#pragma once

#include <cstddef>
#include <vector>

namespace seamcut {

/// s-t flow network with real capacities, solved by Dinic's blocking-flow algorithm.
/// Residual capacities at or below `kFlowEpsilon` count as saturated.
class FlowNetwork {
 public:
  static constexpr double kFlowEpsilon = 1e-12;

  /// `nodes` inner nodes; the source and sink are added internally.
  explicit FlowNetwork(int nodes);

  int source() const noexcept { return source_; }
  int sink() const noexcept { return sink_; }

  /// Adds u->v with capacity `forward` and v->u with capacity `backward`.
  void add_edge(int u, int v, double forward, double backward = 0.0);
  void add_terminal(int node, double from_source, double to_sink);

  double max_flow();

  /// After max_flow(): true if `node` is reachable from the source in the residual graph.
  bool source_side(int node) const { return reachable_[node] != 0; }

  std::size_t augmentations() const noexcept { return augmentations_; }
  std::size_t arc_count() const noexcept { return arcs_.size(); }

 private:
  struct Arc {
    int to;
    double residual;
  };

  bool build_levels();
  double push(int u, double limit);

  int source_;
  int sink_;
  std::vector<std::vector<int>> out_;  // arc ids per node; arc ^ 1 is the reverse arc
  std::vector<Arc> arcs_;
  std::vector<int> level_;
  std::vector<std::size_t> next_arc_;
  std::vector<char> reachable_;
  std::size_t augmentations_ = 0;
};

}  // namespace seamcut
