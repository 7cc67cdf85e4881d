#include "seamcut/solver.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>

#include "seamcut/maxflow.hpp"

namespace seamcut {

std::string_view to_string(SolveMethod method) noexcept {
  switch (method) {
    case SolveMethod::MinCut: return "mincut";
    case SolveMethod::Icm: return "icm";
    case SolveMethod::Oracle: return "oracle";
    case SolveMethod::Naive: return "naive";
  }
  return "unknown";
}

namespace {

// Incident edges of every ambiguous node.
std::vector<std::vector<int>> incidence(const EnergyModel& model) {
  std::vector<std::vector<int>> adj(model.size());
  const auto edges = model.edges();
  for (std::size_t k = 0; k < edges.size(); ++k) {
    if (!model.is_pinned(edges[k].i)) adj[edges[k].i].push_back(static_cast<int>(k));
    if (!model.is_pinned(edges[k].j)) adj[edges[k].j].push_back(static_cast<int>(k));
  }
  return adj;
}

// Energy change from flipping node `k` under `labeling`.
double flip_delta(const EnergyModel& model, const std::vector<int>& incident, const Labeling& labeling,
                  std::size_t k) {
  const Label now = labeling[k];
  const Label next = opposite(now);
  const Unary& u = model.unary()[k];
  double pairwise = 0.0;
  for (int e : incident) {
    const Edge& edge = model.edges()[e];
    const int other = edge.i == static_cast<int>(k) ? edge.j : edge.i;
    // Cut before the flip iff labels differ; the flip toggles that.
    pairwise += model.label_of(other, labeling) == now ? edge.w : -edge.w;
  }
  return u.cost(next) - u.cost(now) + model.lambda() * pairwise;
}

SolveResult finish(const EnergyModel& model, Labeling labeling, SolveMethod method, SolveStats stats) {
  SolveResult result;
  result.energy = total_energy(model, labeling);
  result.labeling = std::move(labeling);
  result.method = method;
  stats.nodes = model.node_count();
  stats.edges = model.edges().size();
  result.stats = stats;
  return result;
}

}  // namespace

SolveResult solve_mincut(const EnergyModel& model) {
  model.validate();
  const std::size_t n = model.size();
  SolveStats stats;
  if (n == 0) return finish(model, {}, SolveMethod::MinCut, stats);

  FlowNetwork net(static_cast<int>(model.node_count()));
  for (std::size_t k = 0; k < n; ++k) {
    const Unary& u = model.unary()[k];
    const double shared = std::min(u.fg, u.bg);
    // Source side is Foreground: a node left on the sink side cuts its source arc (cost u_bg).
    net.add_terminal(static_cast<int>(k), u.bg - shared, u.fg - shared);
  }
  const auto pinned = model.pinned();
  for (std::size_t m = 0; m < pinned.size(); ++m) {
    const int node = static_cast<int>(n + m);
    if (pinned[m].label == Label::Foreground) {
      net.add_terminal(node, kPinCapacity, 0.0);
    } else {
      net.add_terminal(node, 0.0, kPinCapacity);
    }
  }
  for (const Edge& e : model.edges()) {
    const double cap = model.lambda() * e.w;
    if (cap > 0.0) net.add_edge(e.i, e.j, cap, cap);
  }

  stats.flow = net.max_flow();
  stats.iterations = net.augmentations();

  Labeling labeling(n);
  for (std::size_t k = 0; k < n; ++k) {
    labeling[k] = net.source_side(static_cast<int>(k)) ? Label::Foreground : Label::Background;
  }
  return finish(model, std::move(labeling), SolveMethod::MinCut, stats);
}

SolveResult solve_icm(const EnergyModel& model, const Labeling& init, std::size_t max_sweeps) {
  if (init.size() != model.size()) {
    throw Error(ErrorKind::LengthMismatch, "initial labeling has " + std::to_string(init.size()) +
                                               " entries, model has " + std::to_string(model.size()));
  }
  model.validate();
  const auto adj = incidence(model);
  Labeling labeling = init;
  SolveStats stats;
  // Improvements below the flow epsilon are rounding noise; accepting them could cycle.
  constexpr double kMinImprovement = FlowNetwork::kFlowEpsilon;
  while (stats.iterations < max_sweeps) {
    ++stats.iterations;
    bool changed = false;
    for (std::size_t k = 0; k < labeling.size(); ++k) {
      if (flip_delta(model, adj[k], labeling, k) < -kMinImprovement) {
        labeling[k] = opposite(labeling[k]);
        changed = true;
      }
    }
    if (!changed) break;
  }
  return finish(model, std::move(labeling), SolveMethod::Icm, stats);
}

SolveResult solve_oracle(const EnergyModel& model) {
  const std::size_t n = model.size();
  if (n > kOracleMaxPixels) {
    throw Error(ErrorKind::TooManyAmbiguous, std::to_string(n) + " ambiguous pixels exceed the oracle limit of " +
                                                 std::to_string(kOracleMaxPixels));
  }
  model.validate();
  const auto adj = incidence(model);

  // Gray-code walk starting from all-Background: one flip per step, with exact
  // re-evaluation whenever the running energy is near the best seen.
  Labeling labeling(n, Label::Background);
  Labeling best = labeling;
  double best_energy = total_energy(model, labeling);
  double running = best_energy;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t step = 1; step < total; ++step) {
    const auto k = static_cast<std::size_t>(std::countr_zero(step));
    running += flip_delta(model, adj[k], labeling, k);
    labeling[k] = opposite(labeling[k]);
    const double slack = 1e-9 * std::max(1.0, std::abs(best_energy));
    if (running <= best_energy + slack || (step & 0xFFF) == 0) {
      running = total_energy(model, labeling);
      if (running < best_energy || (running == best_energy && labeling < best)) {
        best_energy = running;
        best = labeling;
      }
    }
  }
  SolveStats stats;
  stats.iterations = static_cast<std::size_t>(total);
  return finish(model, std::move(best), SolveMethod::Oracle, stats);
}

SolveResult solve_naive(const EnergyModel& model, const TriMap& trimap, const BinaryMask& object) {
  if (trimap.width() != object.width() || trimap.height() != object.height()) {
    throw Error(ErrorKind::DimensionMismatch, "trimap and object mask dimensions differ");
  }
  const auto amb = trimap.ambiguous_pixels();
  if (amb.size() != model.size() || !std::equal(amb.begin(), amb.end(), model.pixels().begin())) {
    throw Error(ErrorKind::DimensionMismatch, "model pixels do not match the trimap band");
  }
  Labeling labeling(model.size());
  for (std::size_t k = 0; k < labeling.size(); ++k) {
    labeling[k] = object.at(amb[k].x, amb[k].y) ? Label::Foreground : Label::Background;
  }
  return finish(model, std::move(labeling), SolveMethod::Naive, {});
}

}  // namespace seamcut
