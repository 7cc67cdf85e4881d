#include <cmath>
#include <numeric>

#include "doctest.h"
#include "seamcut/maxflow.hpp"
#include "seamcut/solver.hpp"
#include "support/instances.hpp"

using namespace seamcut;
using namespace seamcut::testing;

namespace {

EnergyModel model_of(const Instance& inst, double lambda = 1.0, Connectivity c = Connectivity::Four) {
  return build_energy(inst.original, inst.stylized, inst.trimap, lambda, c);
}

// Independent check for the oracle: plain 2^n loop, no incremental updates.
double plain_enumeration_minimum(const EnergyModel& m) {
  const std::size_t n = m.size();
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    Labeling l(n);
    for (std::size_t k = 0; k < n; ++k) l[k] = (bits >> k) & 1 ? Label::Foreground : Label::Background;
    best = std::min(best, total_energy(m, l));
  }
  return best;
}

}  // namespace

TEST_CASE("flow network on a textbook graph") {
  // Classic 4-node example with max flow 23 (CLRS figure 26.1 without the sink edge split).
  FlowNetwork net(4);
  const int s = net.source();
  const int t = net.sink();
  net.add_edge(s, 0, 16);
  net.add_edge(s, 1, 13);
  net.add_edge(1, 0, 4);
  net.add_edge(0, 2, 12);
  net.add_edge(2, 1, 9);
  net.add_edge(1, 3, 14);
  net.add_edge(3, 2, 7);
  net.add_edge(2, t, 20);
  net.add_edge(3, t, 4);
  CHECK(net.max_flow() == doctest::Approx(23.0));
  CHECK(net.source_side(0));
  CHECK(net.source_side(1));
  CHECK_FALSE(net.source_side(2));
}

TEST_CASE("mincut on single pixel and separable models") {
  const EnergyModel one({{0, 0}}, {{1.0, 2.0}}, {}, {}, 1.0, Connectivity::Four);
  const SolveResult r = solve_mincut(one);
  CHECK(r.labeling == Labeling{Label::Foreground});
  CHECK(r.energy == 1.0);
  CHECK(r.method == SolveMethod::MinCut);

  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    Instance inst = random_instance(rng, {});
    const EnergyModel m = build_energy(inst.original, inst.original, inst.trimap, 1.0, Connectivity::Four);
    double expected = 0.0;
    for (const Unary& u : m.unary()) expected += std::min(u.fg, u.bg);
    CHECK(solve_mincut(m).energy == doctest::Approx(expected).epsilon(1e-12));
    // ICM from anywhere reaches the optimum of a separable energy in one improving sweep.
    const SolveResult icm = solve_icm(m, random_labeling(rng, m.size()), 10);
    CHECK(icm.energy == doctest::Approx(expected).epsilon(1e-12));
    CHECK(icm.stats.iterations <= 2);
  }
}

TEST_CASE("mincut equals exhaustive enumeration") {
  Rng rng(100);
  for (int trial = 0; trial < 120; ++trial) {
    Instance inst = random_instance(rng, {.levels = trial % 2 ? 4 : 0});
    const double lambda = trial % 4 == 0 ? 1.0 : uniform_real(rng, 0.0, 6.0);
    const EnergyModel m = model_of(inst, lambda, trial % 3 ? Connectivity::Four : Connectivity::Eight);
    const SolveResult cut = solve_mincut(m);
    const SolveResult oracle = solve_oracle(m);
    REQUIRE(std::abs(cut.energy - oracle.energy) <= 1e-9);
    CHECK(cut.energy == total_energy(m, cut.labeling));
    CHECK(oracle.energy == total_energy(m, oracle.labeling));
  }
}

TEST_CASE("oracle matches a plain enumeration and its tie-break") {
  Rng rng(55);
  for (int trial = 0; trial < 25; ++trial) {
    Instance inst = random_instance(rng, {.max_ambiguous = 12});
    const EnergyModel m = model_of(inst, uniform_real(rng, 0.0, 3.0));
    CHECK(solve_oracle(m).energy == doctest::Approx(plain_enumeration_minimum(m)).epsilon(1e-12));
  }
  // Two pixels with equal unaries and no edges: every labeling ties, the smallest is all Background.
  const EnergyModel tie({{0, 0}, {1, 0}}, {{1.0, 1.0}, {2.0, 2.0}}, {}, {}, 1.0, Connectivity::Four);
  const SolveResult r = solve_oracle(tie);
  CHECK(r.labeling == Labeling{Label::Background, Label::Background});
  CHECK(r.stats.iterations == 4);
  // Background is strictly preferred for pixel 1 only.
  const EnergyModel lean({{0, 0}, {1, 0}}, {{0.0, 1.0}, {1.0, 1.0}}, {}, {}, 1.0, Connectivity::Four);
  CHECK(solve_oracle(lean).labeling == Labeling{Label::Foreground, Label::Background});
}

TEST_CASE("oracle sizes") {
  const EnergyModel one({{0, 0}}, {{1.0, 2.0}}, {}, {}, 1.0, Connectivity::Four);
  CHECK(solve_oracle(one).stats.iterations == 2);

  const EnergyModel none({}, {}, {}, {}, 1.0, Connectivity::Four);
  const SolveResult empty = solve_oracle(none);
  CHECK(empty.labeling.empty());
  CHECK(empty.energy == 0.0);
  CHECK(solve_mincut(none).energy == 0.0);

  std::vector<Point> px(26);
  std::vector<Unary> un(26, Unary{1.0, 1.0});
  for (int k = 0; k < 26; ++k) px[k] = {k, 0};
  try {
    solve_oracle(EnergyModel(px, un, {}, {}, 1.0, Connectivity::Four));
    FAIL("expected TooManyAmbiguous");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TooManyAmbiguous);
  }
}

TEST_CASE("energy ordering oracle = mincut <= icm <= naive") {
  Rng rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    Instance inst = random_instance(rng, {.levels = 4});
    const EnergyModel m = model_of(inst, uniform_real(rng, 0.2, 4.0));
    const SolveResult oracle = solve_oracle(m);
    const SolveResult cut = solve_mincut(m);
    const SolveResult naive = solve_naive(m, inst.trimap, inst.object);
    const SolveResult icm = solve_icm(m, naive.labeling, 100);
    CHECK(std::abs(oracle.energy - cut.energy) <= 1e-9);
    CHECK(cut.energy <= icm.energy + 1e-9);
    CHECK(icm.energy <= naive.energy);
    CHECK(naive.energy == total_energy(m, naive.labeling));
  }
}

TEST_CASE("max flow equals optimum minus the per-pixel constant") {
  Rng rng(44);
  for (int trial = 0; trial < 40; ++trial) {
    Instance inst = random_instance(rng, {.max_ambiguous = 40, .levels = 3});
    const EnergyModel m = model_of(inst, uniform_real(rng, 0.0, 3.0), Connectivity::Eight);
    const SolveResult cut = solve_mincut(m);
    double constant = 0.0;
    for (const Unary& u : m.unary()) constant += std::min(u.fg, u.bg);
    CHECK(cut.stats.flow == doctest::Approx(cut.energy - constant).epsilon(1e-9));
    CHECK(cut.stats.nodes == m.node_count());
    CHECK(cut.stats.edges == m.edges().size());
  }
}

TEST_CASE("pinned neighbors pull the cut") {
  // Strong edges to a pinned Foreground pixel override a mild unary preference.
  const EnergyModel m({{0, 0}}, {{1.0, 0.5}}, {{{1, 0}, Label::Foreground}}, {{0, 1, 2.0}}, 1.0,
                      Connectivity::Four);
  const SolveResult r = solve_mincut(m);
  CHECK(r.labeling == Labeling{Label::Foreground});
  CHECK(r.energy == 1.0);
  CHECK(solve_oracle(m).energy == 1.0);
}

TEST_CASE("icm keeps an optimal start and stops on its own") {
  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    Instance inst = random_instance(rng, {.levels = 4});
    const EnergyModel m = model_of(inst);
    const SolveResult opt = solve_oracle(m);
    const SolveResult icm = solve_icm(m, opt.labeling, 5);
    CHECK(icm.labeling == opt.labeling);
    CHECK(icm.stats.iterations == 1);
    // Zero sweeps return the start untouched.
    const Labeling start = random_labeling(rng, m.size());
    CHECK(solve_icm(m, start, 0).labeling == start);
    // Every accepted sweep lowers the energy, so the sweep budget is not exhausted.
    CHECK(solve_icm(m, start, 1000).stats.iterations < 1000);
  }
  const EnergyModel one({{0, 0}}, {{1.0, 2.0}}, {}, {}, 1.0, Connectivity::Four);
  CHECK_THROWS_AS(solve_icm(one, {}, 3), Error);
}

TEST_CASE("naive keeps the segmentation labels") {
  Rng rng(90);
  Instance inst = random_instance(rng, {});
  const EnergyModel m = model_of(inst);
  const SolveResult naive = solve_naive(m, inst.trimap, inst.object);
  for (std::size_t k = 0; k < m.size(); ++k) {
    const Point p = m.pixels()[k];
    CHECK((naive.labeling[k] == Label::Foreground) == inst.object.at(p.x, p.y));
  }
  try {
    solve_naive(m, inst.trimap, BinaryMask(inst.object.width() + 1, inst.object.height()));
    FAIL("expected DimensionMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DimensionMismatch);
  }
}

TEST_CASE("mincut rejects malformed models") {
  const EnergyModel bad({{0, 0}, {1, 0}}, {{1, 1}, {1, 1}}, {}, {{0, 1, -1.0}}, 1.0, Connectivity::Four);
  try {
    solve_mincut(bad);
    FAIL("expected MalformedModel");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MalformedModel);
  }
  const EnergyModel dup({{0, 0}, {1, 0}}, {{1, 1}, {1, 1}}, {}, {{0, 1, 1.0}, {1, 0, 1.0}}, 1.0,
                        Connectivity::Four);
  CHECK_THROWS_AS(solve_mincut(dup), Error);
}

TEST_CASE("mincut handles larger bands") {
  Rng rng(8);
  const RgbImage original = smooth_image(rng, 64, 48);
  const RgbImage stylized = stylize(original, {4, 0.5, 0.5});
  BinaryMask object(64, 48);
  for (int y = 10; y < 38; ++y)
    for (int x = 12; x < 50; ++x) object.set(x, y, (x - 31) * (x - 31) / 361.0 + (y - 24) * (y - 24) / 196.0 <= 1.0);
  const TriMap t = compute_band(object, 5.0);
  const EnergyModel m = build_energy(original, stylized, t, 1.0, Connectivity::Eight);
  const SolveResult cut = solve_mincut(m);
  const SolveResult naive = solve_naive(m, t, object);
  const SolveResult icm = solve_icm(m, naive.labeling, 200);
  CHECK(cut.energy <= icm.energy + 1e-9);
  CHECK(icm.energy <= naive.energy);
  // No single flip improves the min-cut labeling.
  const SolveResult polish = solve_icm(m, cut.labeling, 5);
  CHECK(polish.energy >= cut.energy - 1e-9);
}
