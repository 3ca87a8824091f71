#include <doctest.h>

#include <cmath>
#include <random>

#include "polysub/error.hpp"
#include "polysub/polynomial.hpp"
#include "support.hpp"

using namespace polysub;
using testsupport::eval_binary;

namespace {

MultilinearPoly coverage2() {
  // x0 + x1 - x0 x1
  MultilinearPoly p(2);
  p.add_term({positive_literal(0)}, 1.0);
  p.add_term({positive_literal(1)}, 1.0);
  p.add_term({positive_literal(0), positive_literal(1)}, -1.0);
  return p;
}

}  // namespace

TEST_CASE("evaluate: single variable, coverage, constant") {
  CHECK(evaluate(MultilinearPoly::variable(2, 0), std::vector<double>{1.0, 0.0}) == 1.0);
  CHECK(evaluate(coverage2(), std::vector<double>{0.5, 0.5}) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(evaluate(MultilinearPoly::constant(3, 3.0), std::vector<double>{0.2, 0.9, 0.4}) == 3.0);
}

TEST_CASE("evaluate rejects bad points") {
  const auto p = coverage2();
  CHECK_THROWS_AS(evaluate(p, std::vector<double>{0.5}), InputError);
  CHECK_THROWS_AS(evaluate(p, std::vector<double>{0.5, 1.1}), InputError);
  CHECK_THROWS_AS(evaluate(p, std::vector<double>{-0.01, 0.5}), InputError);
  CHECK_NOTHROW(evaluate(p, std::vector<double>{-1e-10, 1.0 + 1e-10}));
}

TEST_CASE("add and scale") {
  const auto x0 = MultilinearPoly::variable(2, 0);
  const auto two = add(x0, x0);
  CHECK(two.term_count() == 1);
  CHECK(two.coefficient({positive_literal(0)}) == 2.0);
  CHECK(scale(coverage2(), 0.0).is_zero());

  MultilinearPoly a(2), b(2);
  a.add_term({positive_literal(0), positive_literal(1)}, 1.0);
  b.add_term({positive_literal(0), positive_literal(1)}, -1.0);
  CHECK(add(a, b).is_zero());
  CHECK_THROWS_AS(add(a, MultilinearPoly(3)), InputError);
}

TEST_CASE("multiply follows the idempotent product") {
  // (2 x0 + 1) * x0 x1 = 3 x0 x1
  MultilinearPoly p(2);
  p.add_term({positive_literal(0)}, 2.0);
  p.add_term({}, 1.0);
  MultilinearPoly q(2);
  q.add_term({positive_literal(0), positive_literal(1)}, 1.0);
  const auto r = multiply(p, q);
  CHECK(r.term_count() == 1);
  CHECK(r.coefficient({positive_literal(0), positive_literal(1)}) == 3.0);

  CHECK(multiply(coverage2(), MultilinearPoly::constant(2, 1.0)) == coverage2());

  // (1 - x0)^2 = 1 - x0, both in signed-literal and positive form.
  const auto c = MultilinearPoly::complement(2, 0);
  CHECK(multiply(c, c) == c);
  MultilinearPoly one_minus(2);
  one_minus.add_term({}, 1.0);
  one_minus.add_term({positive_literal(0)}, -1.0);
  CHECK(multiply(one_minus, one_minus) == one_minus);

  // x0 (1 - x0) = 0
  CHECK(multiply(MultilinearPoly::variable(2, 0), c).is_zero());
  CHECK_THROWS_AS(multiply(c, MultilinearPoly(5)), InputError);
}

TEST_CASE("power") {
  MultilinearPoly s(2);
  s.add_term({positive_literal(0)}, 1.0);
  s.add_term({positive_literal(1)}, 1.0);
  const auto sq = power(s, 2);
  MultilinearPoly expect(2);
  expect.add_term({positive_literal(0)}, 1.0);
  expect.add_term({positive_literal(1)}, 1.0);
  expect.add_term({positive_literal(0), positive_literal(1)}, 2.0);
  CHECK(sq == expect);
  CHECK(power(s, 1) == s);
  CHECK(power(s, 0) == MultilinearPoly::constant(2, 1.0));
  CHECK(power(MultilinearPoly(4), 3).is_zero());

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const auto p = testsupport::random_poly(rng, 6, 5, 3);
    const auto p5 = power(p, 5, ArithOptions::exact());
    for (std::uint64_t m = 0; m < 64; ++m) {
      CHECK(eval_binary(p5, m) == doctest::Approx(std::pow(eval_binary(p, m), 5)).epsilon(1e-9));
    }
  }
}

TEST_CASE("pin") {
  CHECK(pin(coverage2(), 0, 1) == MultilinearPoly::constant(2, 1.0));
  MultilinearPoly x01(2);
  x01.add_term({positive_literal(0), positive_literal(1)}, 1.0);
  CHECK(pin(x01, 0, 0).is_zero());
  const auto c = MultilinearPoly::constant(3, 4.5);
  CHECK(pin(c, 2, 0) == c);
  CHECK(pin(c, 1, 1) == c);
  CHECK_THROWS_AS(pin(c, 3, 1), InputError);
  CHECK_THROWS_AS(pin(c, 0, 2), InputError);
  // Complemented literals pin the other way round.
  const auto comp = MultilinearPoly::complement(2, 1, 2.0);
  CHECK(pin(comp, 1, 0) == MultilinearPoly::constant(2, 2.0));
  CHECK(pin(comp, 1, 1).is_zero());
}

TEST_CASE("grad_coord") {
  const auto p = coverage2();
  const std::vector<double> y{0.3, 0.4};
  CHECK(grad_coord(p, y, 0) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(grad_coord(MultilinearPoly::constant(2, 7.0), y, 1) == 0.0);
  CHECK(grad_coord(MultilinearPoly::variable(2, 0), std::vector<double>{0.7, 0.1}, 1) == 0.0);
  const auto g = gradient(p, y);
  CHECK(g[0] == doctest::Approx(0.6));
  CHECK(g[1] == doctest::Approx(0.7));
}

TEST_CASE("gradient does not depend on its own coordinate") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = testsupport::random_poly(rng, 7, 12, 4);
    auto y = testsupport::random_point(rng, 7);
    for (Index i = 0; i < 7; ++i) {
      const double a = grad_coord(p, y, i);
      y[i] = testsupport::uniform(rng);
      CHECK(std::abs(grad_coord(p, y, i) - a) <= 1e-12);
    }
  }
}

TEST_CASE("relaxation identity against enumeration") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + rng() % 12;
    const auto p = testsupport::random_poly(rng, n, 1 + rng() % 20, 5);
    for (int k = 0; k < 3; ++k) {
      const auto y = testsupport::random_point(rng, n);
      const double want = testsupport::exhaustive_expectation(p, y);
      CHECK(std::abs(evaluate(p, y) - want) <= 1e-10 * std::max(1.0, std::abs(want)));
    }
  }
}

TEST_CASE("to_positive_form keeps binary values") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = testsupport::random_poly(rng, 6, 8, 4);
    const auto q = to_positive_form(p);
    CHECK_FALSE(q.has_complemented_literals());
    for (std::uint64_t m = 0; m < 64; ++m) CHECK(eval_binary(q, m) == doctest::Approx(eval_binary(p, m)));
  }
}

TEST_CASE("canonical construction") {
  MultilinearPoly p(4);
  p.add_term({positive_literal(3), positive_literal(1), positive_literal(3)}, 1.5);
  CHECK(p.coefficient({positive_literal(1), positive_literal(3)}) == 1.5);
  p.add_term({positive_literal(1), complement_literal(1)}, 9.0);  // vanishes
  CHECK(p.term_count() == 1);
  p.add_term({positive_literal(1), positive_literal(3)}, -1.5);
  CHECK(p.is_zero());
  CHECK_THROWS_AS(p.add_term({positive_literal(4)}, 1.0), InputError);
}

TEST_CASE("drop tolerance and exact mode") {
  MultilinearPoly a(1), b(1);
  a.add_term({positive_literal(0)}, 1.0);
  b.add_term({positive_literal(0)}, -(1.0 - 0x1p-52));  // leaves 2.2e-16
  CHECK(add(a, b).is_zero());
  CHECK(add(a, b, ArithOptions::exact()).term_count() == 1);
  const auto pr = prune(scale(a, 1e-6), 1e-3);
  CHECK(pr.is_zero());
}

TEST_CASE("text round trip") {
  SUBCASE("fixed example") {
    const std::string text = "N=3\n1 0\n-0.25 0 2\n";
    const auto p = MultilinearPoly::from_text(text);
    CHECK(p.ground_size() == 3);
    CHECK(p.coefficient({positive_literal(0), positive_literal(2)}) == -0.25);
    CHECK(MultilinearPoly::from_text(p.to_text()) == p);
  }
  SUBCASE("random polys") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 25; ++trial) {
      const auto p = testsupport::random_poly(rng, 9, 15, 4);
      CHECK(MultilinearPoly::from_text(p.to_text()) == p);
    }
  }
  SUBCASE("malformed input reports the line") {
    try {
      (void)MultilinearPoly::from_text("N=2\n1 0\n2 1 0\n");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
    }
    CHECK_THROWS_AS((void)MultilinearPoly::from_text("N=2\n1 5\n"), ParseError);
    CHECK_THROWS_AS((void)MultilinearPoly::from_text("1 0\n"), ParseError);
    CHECK_THROWS_AS((void)MultilinearPoly::from_text("N=2\nabc 0\n"), ParseError);
  }
}
