#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "polysub/matroid.hpp"
#include "polysub/objective.hpp"
#include "polysub/optimizer.hpp"
#include "polysub/polynomial.hpp"

namespace polysub {

struct PipageResult {
  BinaryVector x;
  std::size_t rounds = 0;
  // Estimator value before the first round and after every round.
  std::vector<double> estimator_values;
};

// Pipage rounding driven by the polynomial estimator G_hat(y) = f_hat(y).
//
// While fractional coordinates remain, take the lowest block holding any:
//  - with two or more, pair the two lowest fractional i < j and move to the
//    better of the two extreme transfers (raise i / lower j, or the reverse),
//    preferring the one that raises i on ties;
//  - with exactly one, set it to 1 if that does not lower G_hat, else to 0.
// Every round makes at least one coordinate integral.
PipageResult pipage_round(const MultilinearPoly& estimator, const PartitionMatroid& mat,
                          std::span<const double> y);

// Randomized swap rounding of y = sum_k gamma_k m_k. Bases that are not
// maximal are padded first (PartitionMatroid::pad_to_base).
BinaryVector swap_round(const PartitionMatroid& mat, std::span<const GreedyStep> combo, std::uint64_t seed);

struct PipageCertificate {
  double lhs = 0.0;         // G(x_out) = f(x_out)
  double rhs = 0.0;         // G(y) - 2 (N + 1) R_bar
  double relaxation = 0.0;  // G(y)
  double residual = 0.0;    // R_bar = sum_j |w_j| R_{j,L}

  bool holds(double tol = 1e-12) const { return lhs >= rhs - tol; }
};

PipageCertificate pipage_certificate(const CompositeObjective& obj, const PartitionMatroid& mat,
                                     std::span<const double> y, const BinaryVector& x_out, unsigned order,
                                     std::size_t max_ground = kDefaultOracleGuard);

}  // namespace polysub
