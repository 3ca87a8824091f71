#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "polysub/matroid.hpp"
#include "polysub/objective.hpp"

namespace polysub {

struct GreedyConfig {
  double gamma = 0.01;
  std::size_t record_every = 10;
  bool keep_snapshots = false;

  // ceil(1 / gamma), with a small guard so 1/0.1 counts as 10 steps.
  std::size_t iterations() const;
};

struct TraceRow {
  std::size_t k = 0;
  double t = 0.0;
  double estimate = 0.0;
  double wall_seconds = 0.0;
  std::optional<std::vector<double>> y;
};

struct GreedyTrace {
  std::vector<TraceRow> rows;

  // CSV with header `k,t,estimate,wall_seconds`; values in shortest
  // round-trip form.
  void write_csv(std::ostream& out) const;
  std::string to_csv() const;
  // Throws ParseError on a malformed header or row.
  static GreedyTrace read_csv(std::istream& in);
};

// One LP vertex and the step size it was taken with; y_K = sum gamma_k m_k.
struct GreedyStep {
  double gamma = 0.0;
  BinaryVector vertex;
};

struct GreedyResult {
  std::vector<double> y;
  GreedyTrace trace;
  std::vector<GreedyStep> steps;
  double gradient_seconds = 0.0;
  double loop_seconds = 0.0;
};

// Raised when the gradient estimator fails inside the loop.
class IterationError : public std::runtime_error {
 public:
  IterationError(std::size_t iteration, const std::string& what)
      : std::runtime_error("iteration " + std::to_string(iteration) + ": " + what), iteration_(iteration) {}
  std::size_t iteration() const noexcept { return iteration_; }

 private:
  std::size_t iteration_;
};

using GradientFn = std::function<GradientEstimate(std::span<const double> y, std::size_t iteration)>;
// Value reported in the trace when the gradient estimate carries none.
using ValueFn = std::function<double(std::span<const double> y)>;

// Continuous greedy: y_0 = 0, then y_{k+1} = y_k + gamma_k m_k with
// m_k = argmax_{m in P(M)} <m, grad(y_k)> and gamma_k = min(gamma, 1 - t_k).
GreedyResult continuous_greedy(const PartitionMatroid& mat, const GreedyConfig& cfg, const GradientFn& grad,
                               const ValueFn& value);

struct ApproximationCertificate {
  double lhs = 0.0;  // G(y_K) from the exhaustive oracle
  double rhs = 0.0;  // (1 - 1/e) OPT - D eps(L) - P / (2K)
  double opt = 0.0;  // exhaustive integral optimum, a lower bound on G(y*)
  double diameter = 0.0;
  double bias = 0.0;
  double lipschitz = 0.0;
  std::size_t iterations = 0;

  bool holds(double tol = 1e-12) const { return lhs >= rhs - tol; }
};

// bias_override replaces the bias term (defaults to bias_bound(obj, L)).
ApproximationCertificate approximation_certificate(const CompositeObjective& obj, const PartitionMatroid& mat,
                                                   std::span<const double> y_final, unsigned order,
                                                   std::size_t iterations,
                                                   std::optional<double> bias_override = std::nullopt,
                                                   std::size_t max_ground = kDefaultOracleGuard);

}  // namespace polysub
