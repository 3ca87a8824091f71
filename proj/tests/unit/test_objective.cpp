#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "polysub/error.hpp"
#include "polysub/objective.hpp"
#include "support.hpp"

using namespace polysub;
using testsupport::coverage2;
using testsupport::modular;

namespace {

double l2(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

CompositeObjective single_term(const AnalyticKernel& k, MultilinearPoly g) {
  const std::size_t n = g.ground_size();
  return CompositeObjective(n, {{1.0, k, std::move(g)}});
}

}  // namespace

TEST_CASE("exact_value") {
  const auto sm = testsupport::sm_toy();
  CHECK(exact_value(sm.objective, BinaryVector{1, 1}) == doctest::Approx(0.6931471805599453).epsilon(1e-15));
  CHECK(exact_value(sm.objective, BinaryVector{0, 0}) == 0.0);
  CHECK(exact_value(coverage2(), BinaryVector{1, 0}) == 1.0);
  CHECK_THROWS_AS(exact_value(coverage2(), std::vector<double>{0.5, 1.0}), InputError);

  const auto overloaded = single_term(AnalyticKernel::queue_delay(0.5), MultilinearPoly::variable(1, 0, 0.9));
  CHECK_THROWS_AS(exact_value(overloaded, BinaryVector{1}), DomainError);
}

TEST_CASE("build_poly_estimator") {
  SUBCASE("identity kernel is exact") {
    const auto obj = coverage2();
    for (unsigned L : {1u, 3u, 6u}) CHECK(build_poly_estimator(obj, L) == obj.terms()[0].inner);
  }
  SUBCASE("queue delay L=2 on 0.5 x0") {
    const auto obj = single_term(AnalyticKernel::queue_delay(0.9), MultilinearPoly::variable(1, 0, 0.5));
    const auto p = build_poly_estimator(obj, 2);
    CHECK(p.term_count() == 1);
    CHECK(p.coefficient({positive_literal(0)}) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK_THROWS_AS(build_poly_estimator(obj, 0), InputError);
  }
  SUBCASE("log1p L=1 on x0") {
    const auto obj = single_term(AnalyticKernel::log1p(), MultilinearPoly::variable(1, 0));
    const auto p = build_poly_estimator(obj, 1);
    CHECK(p.coefficient({}) == doctest::Approx(0.07213177477483105).epsilon(1e-14));
    CHECK(p.coefficient({positive_literal(0)}) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  }
  SUBCASE("agrees with the truncated kernel at binary points") {
    const auto inst = gen_sm_synth(3, {8, 2, 2, 2});
    for (unsigned L = 1; L <= 5; ++L) {
      const auto p = build_poly_estimator(inst.objective, L);
      const auto& t = inst.objective.terms();
      for (std::uint64_t m = 0; m < 256; ++m) {
        const auto x = testsupport::mask_to_point(m, 8);
        double want = inst.objective.offset();
        for (const auto& term : t) want += term.weight * eval_taylor(taylor(term.kernel, L), evaluate(term.inner, x));
        CHECK(evaluate(p, x) == doctest::Approx(want).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("grad_poly") {
  const auto p = coverage2().terms()[0].inner;
  const auto g = grad_poly(p, std::vector<double>{0.3, 0.4});
  CHECK(g.values[0] == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(g.values[1] == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(grad_poly(MultilinearPoly(3), std::vector<double>{0.1, 0.2, 0.3}).values == std::vector<double>(3, 0.0));
  CHECK(grad_poly(MultilinearPoly::constant(2, 4.0), std::vector<double>{0.1, 0.2}).values ==
        std::vector<double>(2, 0.0));

  const PolyEstimator est(p, 1);
  const auto g2 = est.gradient(std::vector<double>{0.3, 0.4});
  CHECK(g2.tag == EstimatorTag::poly(1));
  CHECK(g2.values[0] == doctest::Approx(0.6).epsilon(1e-14));
  CHECK(est.value(std::vector<double>{0.3, 0.4}) == doctest::Approx(0.58).epsilon(1e-14));
}

TEST_CASE("grad_sample") {
  const auto obj = coverage2();
  SUBCASE("integral point is exact for one sample") {
    const auto g = grad_sample(obj, std::vector<double>{1.0, 0.0}, {1, 99});
    CHECK(g.values[0] == 1.0);
    CHECK(g.values[1] == 0.0);
  }
  SUBCASE("unbiased within three standard errors") {
    const auto g = grad_sample(obj, std::vector<double>{0.5, 0.5}, {100000, 7});
    CHECK(std::abs(g.values[0] - 0.5) <= 3 * 0.5 / std::sqrt(1e5));
    CHECK(std::abs(g.values[1] - 0.5) <= 3 * 0.5 / std::sqrt(1e5));
  }
  SUBCASE("deterministic for a fixed seed") {
    const std::vector<double> y{0.2, 0.7};
    CHECK(grad_sample(obj, y, {500, 3}).values == grad_sample(obj, y, {500, 3}).values);
    CHECK(grad_sample(obj, y, {500, 3}).values != grad_sample(obj, y, {500, 4}).values);
  }
  SUBCASE("value and tag") {
    const SampleEstimator est(obj);
    const auto g = est.gradient(std::vector<double>{0.5, 0.5}, {10, 1});
    CHECK(g.tag == EstimatorTag::sample(10));
    CHECK(est.value(std::vector<double>{1.0, 1.0}, {5, 1}) == 1.0);
  }
}

TEST_CASE("relaxation_exact and grad_exact") {
  CHECK(relaxation_exact(coverage2(), std::vector<double>{0.5, 0.5}) == doctest::Approx(0.75).epsilon(1e-15));
  const auto sm = testsupport::sm_toy();
  CHECK(relaxation_exact(sm.objective, std::vector<double>{1.0, 1.0}) ==
        doctest::Approx(exact_value(sm.objective, BinaryVector{1, 1})).epsilon(1e-15));
  const CompositeObjective c(3, {}, 2.5);
  CHECK(relaxation_exact(c, std::vector<double>{0.1, 0.2, 0.3}) == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(grad_exact(c, std::vector<double>{0.1, 0.2, 0.3}).values == std::vector<double>(3, 0.0));

  const auto g = grad_exact(coverage2(), std::vector<double>{0.3, 0.4});
  CHECK(g.values[0] == doctest::Approx(0.6).epsilon(1e-14));
  CHECK(g.values[1] == doctest::Approx(0.7).epsilon(1e-14));

  // 0.5 (ln 1.6 + ln 2) - 0.5 ln 1.4, evaluated in extended precision
  CHECK(grad_exact(sm.objective, std::vector<double>{0.5, 0.5}).values[0] ==
        doctest::Approx(0.41333928659223397).epsilon(1e-14));

  CHECK_THROWS_AS(relaxation_exact(modular(std::vector<double>(21, 0.1)), std::vector<double>(21, 0.5)), GuardError);
}

TEST_CASE("bias bounds") {
  CHECK(bias_bound(ProblemKind::Summarization, 5, 200, 3) == doctest::Approx(2.209708691207961).epsilon(1e-14));
  CHECK(bias_bound(ProblemKind::Influence, 1, 200, 3) == doctest::Approx(0.4419417382415922).epsilon(1e-14));
  CHECK(bias_bound(ProblemKind::FacilityLocation, 7, 200, 3) == doctest::Approx(0.4419417382415922).epsilon(1e-14));
  CHECK(bias_bound(ProblemKind::CacheNetwork, 1, 4, 2, 0.5) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(bias_bound(ProblemKind::CacheNetwork, 1, 4, 2), InputError);
  CHECK(bias_bound(coverage2(), 3) == 0.0);
}

TEST_CASE("bias bound holds and decays on a small summarization instance") {
  const auto inst = gen_sm_synth(5, {8, 2, 2, 2});
  std::mt19937_64 rng(9);
  const auto y = testsupport::random_point(rng, 8);
  const auto exact = grad_exact(inst.objective, y).values;
  double prev = 1e300;
  for (unsigned L = 1; L <= 20; ++L) {
    const auto approx = grad_poly(build_poly_estimator(inst.objective, L), y).values;
    const double err = l2(exact, approx);
    if (L <= 6) CHECK(err <= bias_bound(ProblemKind::Summarization, 2, 8, L));
    CHECK(err <= prev + 1e-12);
    prev = err;
    const auto eps = epsilon_oracle(inst.objective, y, L);
    for (std::size_t i = 0; i < 8; ++i) CHECK(std::abs(exact[i] - approx[i]) <= eps[i] + 1e-12);
  }
  CHECK(prev <= 1e-8);
}

TEST_CASE("identity kernels are exact at any order") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 10; ++trial) {
    // Non-negative coefficients summing to 1 keep g inside [0, 1].
    const auto raw = testsupport::random_poly(rng, 7, 10, 4);
    MultilinearPoly p(7);
    double total = 0.0;
    for (const auto& [key, c] : raw.terms()) total += std::abs(c);
    for (const auto& [key, c] : raw.terms()) p.add_term(key, std::abs(c) / total);
    const CompositeObjective obj(7, {{0.7, AnalyticKernel::identity(), p}}, 0.1);
    const auto y = testsupport::random_point(rng, 7);
    const auto exact = grad_exact(obj, y).values;
    for (unsigned L : {1u, 2u, 5u}) CHECK(l2(exact, grad_poly(build_poly_estimator(obj, L), y).values) <= 1e-10);
  }
}

TEST_CASE("lipschitz constant and sample count") {
  CHECK(lipschitz_P(modular({0.5, 0.3, 0.2}), PartitionMatroid::uniform(3, 1)) == doctest::Approx(1.0));
  CHECK(lipschitz_P(CompositeObjective(2, {}, 0.25), PartitionMatroid::uniform(2, 1)) == 0.5);
  const double t = static_cast<double>(theoretical_sample_count(100, 2));
  CHECK(t == doctest::Approx(1.4349235676e10).epsilon(1e-9));
}

TEST_CASE("estimator labels") {
  CHECK(EstimatorTag::poly(3).label() == "POLY3");
  CHECK(EstimatorTag::sample(100).label() == "SAMP100");
  CHECK(EstimatorTag::exact().label() == "EXACT");
  CHECK(EstimatorTag::parse("SAMP1000") == EstimatorTag::sample(1000));
  CHECK(EstimatorTag::parse("POLY2") == EstimatorTag::poly(2));
  CHECK_THROWS_AS(EstimatorTag::parse("SAMP0"), InputError);
  CHECK_THROWS_AS(EstimatorTag::parse("POLY"), InputError);
  CHECK_THROWS_AS(EstimatorTag::parse("FOO1"), InputError);
  CHECK(derive_seed(1, 2) == derive_seed(1, 2));
  CHECK(derive_seed(1, 2) != derive_seed(2, 1));
}
