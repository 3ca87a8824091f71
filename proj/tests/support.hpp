#pragma once

// Shared helpers for the test binaries: seeded random polynomials and
// brute-force reference computations that do not go through the library's
// evaluation code.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "polysub/polynomial.hpp"

namespace testsupport {

using polysub::Index;
using polysub::MultilinearPoly;

inline double uniform(std::mt19937_64& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

// Random polynomial with signed literals and a constant.
inline MultilinearPoly random_poly(std::mt19937_64& rng, std::size_t n, std::size_t terms, std::size_t max_degree,
                                   bool allow_complements = true) {
  MultilinearPoly p(n);
  std::uniform_int_distribution<std::size_t> deg(0, max_degree);
  std::uniform_int_distribution<Index> var(0, static_cast<Index>(n - 1));
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  for (std::size_t t = 0; t < terms; ++t) {
    polysub::MonomialKey key;
    const std::size_t d = deg(rng);
    for (std::size_t k = 0; k < d; ++k) {
      const Index v = var(rng);
      const bool neg = allow_complements && (rng() & 1U);
      key.push_back(neg ? polysub::complement_literal(v) : polysub::positive_literal(v));
    }
    p.add_term(key, coef(rng));
  }
  return p;
}

// p at a binary point, straight from the term map.
inline double eval_binary(const MultilinearPoly& p, std::uint64_t mask) {
  double s = 0.0;
  for (const auto& [key, c] : p.terms()) {
    double prod = c;
    for (auto lit : key) {
      const bool bit = (mask >> polysub::literal_var(lit)) & 1U;
      prod *= polysub::literal_negated(lit) ? (bit ? 0.0 : 1.0) : (bit ? 1.0 : 0.0);
    }
    s += prod;
  }
  return s;
}

inline double bernoulli_weight(const std::vector<double>& y, std::uint64_t mask) {
  double w = 1.0;
  for (std::size_t i = 0; i < y.size(); ++i) w *= ((mask >> i) & 1U) ? y[i] : 1.0 - y[i];
  return w;
}

// E_{x ~ Bernoulli(y)} p(x) by enumeration.
inline double exhaustive_expectation(const MultilinearPoly& p, const std::vector<double>& y) {
  double s = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << y.size()); ++mask) {
    s += bernoulli_weight(y, mask) * eval_binary(p, mask);
  }
  return s;
}

inline std::vector<double> random_point(std::mt19937_64& rng, std::size_t n) {
  std::vector<double> y(n);
  for (auto& v : y) v = uniform(rng);
  return y;
}

inline std::vector<double> mask_to_point(std::uint64_t mask, std::size_t n) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = ((mask >> i) & 1U) ? 1.0 : 0.0;
  return x;
}

}  // namespace testsupport
