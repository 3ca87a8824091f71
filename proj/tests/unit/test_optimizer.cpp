#include <doctest.h>

#include <cmath>
#include <sstream>

#include "fixtures.hpp"
#include "polysub/error.hpp"
#include "polysub/optimizer.hpp"

using namespace polysub;

namespace {

GreedyResult run_exact(const CompositeObjective& obj, const PartitionMatroid& mat, double gamma,
                       std::size_t record_every = 1) {
  GreedyConfig cfg;
  cfg.gamma = gamma;
  cfg.record_every = record_every;
  return continuous_greedy(
      mat, cfg, [&](std::span<const double> y, std::size_t) { return grad_exact(obj, y); },
      [&](std::span<const double> y) { return relaxation_exact(obj, y); });
}

}  // namespace

TEST_CASE("iteration count") {
  CHECK(GreedyConfig{0.1}.iterations() == 10);
  CHECK(GreedyConfig{0.01}.iterations() == 100);
  CHECK(GreedyConfig{0.3}.iterations() == 4);
  CHECK(GreedyConfig{1.0}.iterations() == 1);
}

TEST_CASE("modular objective under a uniform matroid") {
  const auto obj = testsupport::modular({0.5, 0.3, 0.2});
  const auto mat = PartitionMatroid::uniform(3, 1);

  SUBCASE("two half steps") {
    const auto res = run_exact(obj, mat, 0.5);
    CHECK(res.y == std::vector<double>{1.0, 0.0, 0.0});
    CHECK(relaxation_exact(obj, res.y) == doctest::Approx(0.5).epsilon(1e-15));
    REQUIRE(res.steps.size() == 2);
    for (const auto& s : res.steps) CHECK(s.vertex == BinaryVector{1, 0, 0});
  }
  SUBCASE("one full step") {
    const auto res = run_exact(obj, mat, 1.0);
    REQUIRE(res.steps.size() == 1);
    CHECK(res.steps[0].gamma == 1.0);
    CHECK(res.y == std::vector<double>{1.0, 0.0, 0.0});
  }
  SUBCASE("clipped last step") {
    const auto res = run_exact(obj, mat, 0.3);
    REQUIRE(res.steps.size() == 4);
    double total = 0.0;
    for (std::size_t k = 0; k < 3; ++k) CHECK(res.steps[k].gamma == 0.3);
    CHECK(res.steps[3].gamma == doctest::Approx(0.1).epsilon(1e-12));
    for (const auto& s : res.steps) total += s.gamma;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(res.y[0] == doctest::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("trace rows") {
  const auto obj = testsupport::coverage2();
  const auto res = run_exact(obj, PartitionMatroid::uniform(2, 1), 0.1, 3);
  REQUIRE(!res.trace.rows.empty());
  CHECK(res.trace.rows.front().k == 0);
  CHECK(res.trace.rows.front().t == 0.0);
  CHECK(res.trace.rows.back().k == 10);
  CHECK(res.trace.rows.back().t == doctest::Approx(1.0));
  for (std::size_t i = 1; i < res.trace.rows.size(); ++i) {
    CHECK(res.trace.rows[i].k > res.trace.rows[i - 1].k);
    CHECK(res.trace.rows[i].estimate >= res.trace.rows[i - 1].estimate - 1e-12);
  }
}

TEST_CASE("iterates stay inside the polytope") {
  const auto inst = gen_sm_synth(11, {10, 3, 3, 2});
  GreedyConfig cfg;
  cfg.gamma = 0.05;
  cfg.record_every = 1;
  cfg.keep_snapshots = true;
  const auto est = build_poly_estimator(inst.objective, 2);
  const auto res = continuous_greedy(
      inst.matroid, cfg, [&](std::span<const double> y, std::size_t) { return grad_poly(est, y); },
      [&](std::span<const double> y) { return evaluate(est, y); });
  for (const auto& row : res.trace.rows) {
    REQUIRE(row.y.has_value());
    CHECK(inst.matroid.in_polytope(*row.y));
  }
  CHECK(inst.matroid.in_polytope(res.y));
}

TEST_CASE("gradient failures carry the iteration") {
  GreedyConfig cfg;
  cfg.gamma = 0.25;
  try {
    (void)continuous_greedy(
        PartitionMatroid::uniform(2, 1), cfg,
        [](std::span<const double> y, std::size_t k) -> GradientEstimate {
          if (k == 2) throw DomainError("boom");
          return {std::vector<double>(y.size(), 1.0), EstimatorTag::exact(), 0.0, 0.0};
        },
        [](std::span<const double>) { return 0.0; });
    FAIL("expected an iteration error");
  } catch (const IterationError& e) {
    CHECK(e.iteration() == 2);
  }
}

TEST_CASE("approximation certificate") {
  const auto obj = testsupport::modular({0.5, 0.3, 0.2});
  const auto mat = PartitionMatroid::uniform(3, 1);
  const auto res = run_exact(obj, mat, 0.5);
  const auto cert = approximation_certificate(obj, mat, res.y, 3, 2);
  CHECK(cert.lhs == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(cert.rhs == doctest::Approx(0.06606027941427884).epsilon(1e-12));
  CHECK(cert.opt == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(cert.lipschitz == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(cert.holds());

  const auto big = approximation_certificate(obj, mat, res.y, 3, 1000000);
  CHECK(big.rhs == doctest::Approx(0.3160602794142788).epsilon(1e-5));

  const CompositeObjective zero(3, {});
  const auto zc = approximation_certificate(zero, mat, std::vector<double>{1, 0, 0}, 1, 10);
  CHECK(zc.lhs == 0.0);
  CHECK(zc.rhs == 0.0);
}

TEST_CASE("trace CSV round trip") {
  GreedyTrace tr;
  tr.rows.push_back({0, 0.0, 0.0, 0.0, std::nullopt});
  tr.rows.push_back({10, 0.1, 0.123456789012345678, 1.5e-7, std::nullopt});
  tr.rows.push_back({100, 1.0, 1.0 / 3.0, 2.25, std::nullopt});
  const std::string csv = tr.to_csv();
  CHECK(csv.rfind("k,t,estimate,wall_seconds\n", 0) == 0);
  std::istringstream in(csv);
  const auto back = GreedyTrace::read_csv(in);
  REQUIRE(back.rows.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(back.rows[i].k == tr.rows[i].k);
    CHECK(back.rows[i].t == tr.rows[i].t);
    CHECK(back.rows[i].estimate == tr.rows[i].estimate);
    CHECK(back.rows[i].wall_seconds == tr.rows[i].wall_seconds);
  }
  CHECK(back.to_csv() == csv);

  std::istringstream bad_header("k,t,value\n0,0,0\n");
  CHECK_THROWS_AS(GreedyTrace::read_csv(bad_header), ParseError);
  std::istringstream bad_row("k,t,estimate,wall_seconds\n0,0,0,0\n1,x,0,0\n");
  try {
    (void)GreedyTrace::read_csv(bad_row);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}
