#include "seamcut/maxflow.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "seamcut/error.hpp"

namespace seamcut {

FlowNetwork::FlowNetwork(int nodes) : source_(nodes), sink_(nodes + 1) {
  if (nodes < 0) throw Error(ErrorKind::InvalidParams, "negative node count");
  out_.resize(static_cast<std::size_t>(nodes) + 2);
}

void FlowNetwork::add_edge(int u, int v, double forward, double backward) {
  const int id = static_cast<int>(arcs_.size());
  arcs_.push_back({v, forward});
  arcs_.push_back({u, backward});
  out_[u].push_back(id);
  out_[v].push_back(id + 1);
}

void FlowNetwork::add_terminal(int node, double from_source, double to_sink) {
  if (from_source > 0.0) add_edge(source_, node, from_source);
  if (to_sink > 0.0) add_edge(node, sink_, to_sink);
}

bool FlowNetwork::build_levels() {
  level_.assign(out_.size(), -1);
  std::deque<int> queue{source_};
  level_[source_] = 0;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int a : out_[u]) {
      const Arc& arc = arcs_[a];
      if (arc.residual > kFlowEpsilon && level_[arc.to] < 0) {
        level_[arc.to] = level_[u] + 1;
        queue.push_back(arc.to);
      }
    }
  }
  return level_[sink_] >= 0;
}

double FlowNetwork::push(int u, double limit) {
  if (u == sink_) return limit;
  for (std::size_t& k = next_arc_[u]; k < out_[u].size(); ++k) {
    const int a = out_[u][k];
    Arc& arc = arcs_[a];
    if (arc.residual <= kFlowEpsilon || level_[arc.to] != level_[u] + 1) continue;
    const double pushed = push(arc.to, std::min(limit, arc.residual));
    if (pushed > 0.0) {
      arc.residual -= pushed;
      arcs_[a ^ 1].residual += pushed;
      return pushed;
    }
  }
  return 0.0;
}

double FlowNetwork::max_flow() {
  double total = 0.0;
  while (build_levels()) {
    next_arc_.assign(out_.size(), 0);
    for (;;) {
      const double pushed = push(source_, std::numeric_limits<double>::infinity());
      if (pushed <= 0.0) break;
      total += pushed;
      ++augmentations_;
    }
  }

  reachable_.assign(out_.size(), 0);
  std::deque<int> queue{source_};
  reachable_[source_] = 1;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int a : out_[u]) {
      const Arc& arc = arcs_[a];
      if (arc.residual > kFlowEpsilon && !reachable_[arc.to]) {
        reachable_[arc.to] = 1;
        queue.push_back(arc.to);
      }
    }
  }
  return total;
}

}  // namespace seamcut
