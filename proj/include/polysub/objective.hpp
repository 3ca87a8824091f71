#pragma once

// Composite objectives f(x) = offset + sum_j w_j h_j(g_j(x)), with g_j
// multilinear and h_j analytic, together with the gradient estimators used
// by continuous greedy and the brute-force oracles that check them.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "polysub/analytic.hpp"
#include "polysub/matroid.hpp"
#include "polysub/polynomial.hpp"
#include "polysub/simd/compiled_poly.hpp"

namespace polysub {

enum class ProblemKind { Generic, Summarization, Influence, FacilityLocation, CacheNetwork };

std::string to_string(ProblemKind kind);
ProblemKind problem_kind_from_string(const std::string& s);

struct ObjectiveTerm {
  double weight = 1.0;
  AnalyticKernel kernel = AnalyticKernel::identity();
  MultilinearPoly inner;
};

class CompositeObjective {
 public:
  CompositeObjective() = default;
  CompositeObjective(std::size_t ground_size, std::vector<ObjectiveTerm> terms, double offset = 0.0,
                     ProblemKind kind = ProblemKind::Generic);

  std::size_t ground_size() const noexcept { return ground_size_; }
  const std::vector<ObjectiveTerm>& terms() const noexcept { return terms_; }
  std::size_t term_count() const noexcept { return terms_.size(); }
  double offset() const noexcept { return offset_; }
  ProblemKind kind() const noexcept { return kind_; }

  // Smallest expansion order every kernel accepts: 1 with a queue kernel, else 0.
  unsigned min_supported_order() const noexcept;

 private:
  std::size_t ground_size_ = 0;
  std::vector<ObjectiveTerm> terms_;
  double offset_ = 0.0;
  ProblemKind kind_ = ProblemKind::Generic;
};

struct EstimatorTag {
  enum class Kind { Poly, Sample, Exact };
  Kind kind = Kind::Exact;
  std::uint64_t parameter = 0;  // L for Poly, T for Sample

  static EstimatorTag poly(unsigned order) { return {Kind::Poly, order}; }
  static EstimatorTag sample(std::uint64_t count) { return {Kind::Sample, count}; }
  static EstimatorTag exact() { return {Kind::Exact, 0}; }

  // POLY3, SAMP100, EXACT
  std::string label() const;
  static EstimatorTag parse(const std::string& label);

  friend bool operator==(const EstimatorTag&, const EstimatorTag&) = default;
};

struct GradientEstimate {
  std::vector<double> values;
  EstimatorTag tag;
  double wall_time = 0.0;
  // Estimate of the relaxation at the same point when the estimator produces
  // one as a by-product.
  std::optional<double> value;
};

struct SampleConfig {
  std::uint64_t samples = 1;  // T
  std::uint64_t seed = 0;
};

// Mixes two 64-bit values into a well-spread seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) noexcept;

// f(x) at a binary point. Throws DomainError when some g_j(x) leaves its
// kernel's domain.
double exact_value(const CompositeObjective& obj, std::span<const double> x);
double exact_value(const CompositeObjective& obj, const BinaryVector& x);

// f_L(x) = offset + sum_j w_j h_L(g_j(x)) expanded into one polynomial.
MultilinearPoly build_poly_estimator(const CompositeObjective& obj, unsigned order,
                                     ArithOptions opts = {});

// Deterministic gradient of a polynomial estimator: coordinate i is
// p([y]_{+i}) - p([y]_{-i}).
GradientEstimate grad_poly(const MultilinearPoly& estimator, std::span<const double> y);

// Reusable compiled form of a polynomial estimator.
class PolyEstimator {
 public:
  PolyEstimator(const MultilinearPoly& estimator, unsigned order);

  GradientEstimate gradient(std::span<const double> y) const;
  double value(std::span<const double> y) const;
  const simd::CompiledPoly& compiled() const noexcept { return compiled_; }
  unsigned order() const noexcept { return order_; }

 private:
  simd::CompiledPoly compiled_;
  unsigned order_ = 0;
};

// Monte-Carlo gradient: T Bernoulli(y) draws, coordinate i averages
// f([x]_{+i}) - f([x]_{-i}). Sample l uses an engine seeded from
// derive_seed(seed, l), so results do not depend on evaluation order.
class SampleEstimator {
 public:
  explicit SampleEstimator(const CompositeObjective& obj);

  GradientEstimate gradient(std::span<const double> y, const SampleConfig& cfg) const;
  // Mean of f over T draws from y.
  double value(std::span<const double> y, const SampleConfig& cfg) const;
  // Mean of f - f_L over the same draws, f_L being the order-L truncation.
  // Adding the exact relaxation of f_L gives a low-variance estimate of G(y).
  double remainder_value(std::span<const double> y, const SampleConfig& cfg, unsigned order) const;

 private:
  const CompositeObjective* obj_;
  std::vector<simd::CompiledPoly> inner_;
  std::size_t scratch_size_ = 0;
  std::size_t max_local_ = 0;
};

GradientEstimate grad_sample(const CompositeObjective& obj, std::span<const double> y,
                             const SampleConfig& cfg);

inline constexpr std::size_t kDefaultOracleGuard = 20;

// Brute-force multilinear relaxation over all 2^N binary points.
double relaxation_exact(const CompositeObjective& obj, std::span<const double> y,
                        std::size_t max_ground = kDefaultOracleGuard);
GradientEstimate grad_exact(const CompositeObjective& obj, std::span<const double> y,
                            std::size_t max_ground = kDefaultOracleGuard);

// Per-coordinate bias construction E[R_L([x]_{+i})] + E[R_L([x]_{-i})] with
// R_L(x) = sum_j |w_j| |h_j(g_j(x)) - h_L(g_j(x))| evaluated pointwise.
std::vector<double> epsilon_oracle(const CompositeObjective& obj, std::span<const double> y,
                                   unsigned order, std::size_t max_ground = kDefaultOracleGuard);

// Closed-form gradient bias bound for the named problem family.
//   Summarization:            M sqrt(N) / ((L+1) 2^L)
//   Influence, FacilityLoc.:  sqrt(N) / ((L+1) 2^L)
//   CacheNetwork:             2 M sqrt(N) s_bar^(L+1) / (1 - s_bar), N = |V||C|
double bias_bound(ProblemKind kind, std::size_t M, std::size_t N, unsigned order,
                  std::optional<double> s_bar = std::nullopt);
// 2 sqrt(N) sum_j |w_j| R_{j,L}: the same construction for any objective.
double bias_bound(const CompositeObjective& obj, unsigned order);

// sum_j |w_j| R_{j,L}: uniform bound on |f - f_L|.
double residual_total(const CompositeObjective& obj, unsigned order);

// P = 2 max_{x in M} f(x). Exhaustive over bases when the base count is
// within max_bases; otherwise 2 f(1), an upper bound for monotone f.
double lipschitz_P(const CompositeObjective& obj, const PartitionMatroid& mat, double max_bases = 1e6);

// T = (10 / delta^2)(1 + ln N) with delta = 1 / (40 d^2 N).
std::uint64_t theoretical_sample_count(std::size_t N, std::size_t d);

}  // namespace polysub
