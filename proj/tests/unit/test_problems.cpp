#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "polysub/error.hpp"
#include "polysub/io.hpp"
#include "polysub/problems.hpp"
#include "support.hpp"

using namespace polysub;

namespace {

double f_at(const CompositeObjective& obj, std::uint64_t mask) {
  return exact_value(obj, testsupport::mask_to_point(mask, obj.ground_size()));
}

// Monotone and submodular over every pair of nested sets by enumeration.
void check_monotone_submodular(const CompositeObjective& obj) {
  const std::size_t n = obj.ground_size();
  const std::uint64_t full = std::uint64_t{1} << n;
  std::vector<double> val(full);
  for (std::uint64_t m = 0; m < full; ++m) val[m] = f_at(obj, m);
  for (std::uint64_t a = 0; a < full; ++a) {
    for (std::size_t e = 0; e < n; ++e) {
      const std::uint64_t bit = std::uint64_t{1} << e;
      if (a & bit) continue;
      const double gain_a = val[a | bit] - val[a];
      CHECK(gain_a >= -1e-12);
      // supersets of a without e
      const std::uint64_t rest = (full - 1) & ~a & ~bit;
      for (std::uint64_t s = rest;; s = (s - 1) & rest) {
        const std::uint64_t b = a | s;
        CHECK(val[b | bit] - val[b] <= gain_a + 1e-12);
        if (s == 0) break;
      }
    }
  }
}

}  // namespace

TEST_CASE("summarization values") {
  SummarizationSpec spec;
  spec.rewards = {0.6, 0.4};
  spec.similarity = {{0, 1}};
  spec.matroid = PartitionMatroid::uniform(2, 1);
  const auto one = build_sm(spec);
  CHECK(exact_value(one.objective, BinaryVector{1, 1}) == doctest::Approx(0.6931471805599453).epsilon(1e-15));
  CHECK(exact_value(one.objective, BinaryVector{0, 0}) == 0.0);
  CHECK(one.objective.kind() == ProblemKind::Summarization);

  spec.similarity = {{0}, {1}};
  const auto two = build_sm(spec);
  CHECK(exact_value(two.objective, BinaryVector{1, 0}) == doctest::Approx(0.47000362924573555).epsilon(1e-15));

  spec.rewards = {0.6, 0.5};
  CHECK_THROWS_AS(build_sm(spec), InputError);
}

TEST_CASE("independent cascade reachability") {
  const std::vector<DirectedEdge> e{{0, 1}};
  const auto c = simulate_ic(2, e, 1.0, 3, 42);
  REQUIRE(c.cascades() == 3);
  for (const auto& r : c.reach) {
    CHECK(r[0] == std::vector<Index>{0});
    CHECK(r[1] == std::vector<Index>{0, 1});
  }
  const auto dead = simulate_ic(2, e, 0.0, 1, 42);
  CHECK(dead.reach[0][1] == std::vector<Index>{1});

  // a chain 0 -> 1 -> 2 and a side edge 3 -> 2
  const std::vector<DirectedEdge> chain{{0, 1}, {1, 2}, {3, 2}};
  const auto cc = simulate_ic(4, chain, 1.0, 1, 1);
  CHECK(cc.reach[0][2] == std::vector<Index>{0, 1, 2, 3});

  const auto a = simulate_ic(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}}, 0.5, 4, 9);
  const auto b = simulate_ic(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}}, 0.5, 4, 9);
  CHECK(a.reach == b.reach);
}

TEST_CASE("influence objective") {
  const auto c = simulate_ic(2, {{0, 1}}, 1.0, 2, 1);
  const auto obj = build_im(c);
  CHECK(exact_value(obj, BinaryVector{1, 0}) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(exact_value(obj, BinaryVector{0, 0}) == 0.0);
  CHECK(exact_value(obj, BinaryVector{1, 1}) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  // only node 1 seeded covers half the nodes
  CHECK(exact_value(obj, BinaryVector{0, 1}) == doctest::Approx(std::log(1.5)).epsilon(1e-15));
  CHECK(obj.kind() == ProblemKind::Influence);
}

TEST_CASE("facility location") {
  // two facilities, one customer with weights 0.8 and 0.5
  FacilitySpec spec{2, 1, {0.8, 0.5}};
  const auto obj = build_fl(spec, AnalyticKernel::identity());
  CHECK(exact_value(obj, BinaryVector{0, 1}) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(exact_value(obj, BinaryVector{1, 1}) == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(exact_value(obj, BinaryVector{0, 0}) == 0.0);
  CHECK_THROWS_AS(build_fl(FacilitySpec{1, 1, {1.5}}), InputError);

  // max identity over random weights, all subsets
  std::mt19937_64 rng(8);
  FacilitySpec rnd{6, 4, {}};
  for (int i = 0; i < 24; ++i) rnd.weights.push_back(rng() % 3 == 0 ? 0.0 : testsupport::uniform(rng));
  const auto lin = build_fl(rnd, AnalyticKernel::identity());
  for (std::uint64_t m = 0; m < 64; ++m) {
    double want = 0.0;
    for (std::size_t j = 0; j < 4; ++j) {
      double best = 0.0;
      for (std::size_t i = 0; i < 6; ++i) {
        if ((m >> i) & 1U) best = std::max(best, rnd.weight(i, j));
      }
      want += best / 4.0;
    }
    CHECK(f_at(lin, m) == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("cache network") {
  CacheNetworkSpec spec;
  spec.nodes = 2;
  spec.catalog = 1;
  spec.edges = {{1, 0, 2.0}};  // responses travel from the server v2 to v1
  spec.requests = {{0, {0, 1}, 1.0}};
  spec.capacities = {1, 0};
  const auto inst = build_cn(spec);
  CHECK(edge_loads(spec, std::vector<double>{0.0, 0.0}) == std::vector<double>{0.5});
  CHECK(inst.objective.offset() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(exact_value(inst.objective, BinaryVector{0, 0}) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(exact_value(inst.objective, BinaryVector{1, 0}) == doctest::Approx(1.0).epsilon(1e-15));

  spec.edges[0].service_rate = 1e12;
  const auto fast = build_cn(spec);
  CHECK(std::abs(exact_value(fast.objective, BinaryVector{0, 0})) <= 1e-11);
  CHECK(std::abs(exact_value(fast.objective, BinaryVector{1, 0})) <= 1e-11);

  spec.edges[0].service_rate = 1.0;
  CHECK_THROWS_AS(build_cn(spec), StabilityError);

  spec.edges[0] = {0, 1, 2.0};  // wrong direction for the response path
  CHECK_THROWS_AS(build_cn(spec), InputError);
}

TEST_CASE("cache network objective is monotone submodular") {
  CacheNetworkSpec spec;
  spec.nodes = 3;
  spec.catalog = 2;
  spec.edges = {{1, 0, 4.0}, {2, 1, 5.0}};
  spec.requests = {{0, {0, 1, 2}, 1.0}, {1, {0, 1, 2}, 1.5}, {1, {1, 2}, 0.5}};
  spec.capacities = {1, 1, 0};
  const auto inst = build_cn(spec);
  check_monotone_submodular(inst.objective);
  const double lam = 1.0 / 4.0 + 1.5 / 4.0;
  CHECK(edge_loads(spec, std::vector<double>(6, 0.0))[0] == doctest::Approx(lam).epsilon(1e-15));
}

TEST_CASE("generators are monotone submodular on small sizes") {
  check_monotone_submodular(gen_sm_synth(2, {8, 3, 2, 2}).objective);
  check_monotone_submodular(gen_im_random(2, {8, 12, 0.5, 2, 2, 2}).objective);
  check_monotone_submodular(gen_fl_synth(2, {7, 5, 14, 2, 2}).objective);
}

TEST_CASE("generator structure") {
  const auto sm = gen_sm_synth(1);
  CHECK(sm.name == "smsynth");
  CHECK(sm.objective.ground_size() == 200);
  CHECK(sm.objective.term_count() == 5);
  CHECK(sm.matroid.block_count() == 2);

  const auto im1 = gen_im_synth(1);
  CHECK(im1.name == "imsynth1");
  CHECK(im1.objective.ground_size() == 200);
  CHECK(im1.matroid.rank() == 30);
  ImSynthParams pl;
  pl.degree = ImSynthParams::Degree::PowerLaw;
  CHECK(gen_im_synth(1, pl).name == "imsynth2");
  const auto edges = gen_bipartite_edges(3, pl);
  CHECK(edges.size() == 400);
  for (const auto& e : edges) {
    CHECK(e.from < 100);
    CHECK(e.to >= 100);
  }
  auto sorted = edges;
  std::sort(sorted.begin(), sorted.end(), [](auto a, auto b) { return std::pair(a.from, a.to) < std::pair(b.from, b.to); });
  CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());

  const auto fl = gen_fl_synth(1);
  CHECK(fl.name == "flsynth1");
  CHECK(fl.objective.ground_size() == 200);
  CHECK(fl.matroid.rank() == 50);
}

TEST_CASE("generators are deterministic") {
  for (std::uint64_t seed : {1u, 2u}) {
    CHECK(instance_to_json(gen_sm_synth(seed, {20, 3, 2, 2})) == instance_to_json(gen_sm_synth(seed, {20, 3, 2, 2})));
    CHECK(instance_to_json(gen_im_random(seed)) == instance_to_json(gen_im_random(seed)));
    CHECK(instance_to_json(gen_fl_synth(seed, {10, 10, 30, 2, 2})) ==
          instance_to_json(gen_fl_synth(seed, {10, 10, 30, 2, 2})));
  }
  CHECK(instance_to_json(gen_im_random(1)) != instance_to_json(gen_im_random(2)));
}
