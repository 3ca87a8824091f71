#include "polysub/rounding.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "polysub/error.hpp"
#include "polysub/simd/compiled_poly.hpp"

namespace polysub {

namespace {

constexpr double kIntegralTol = 1e-9;

bool fractional(double v) { return v > 0.0 && v < 1.0; }

double snap(double v) {
  if (v < kIntegralTol) return 0.0;
  if (v > 1.0 - kIntegralTol) return 1.0;
  return v;
}

}  // namespace

PipageResult pipage_round(const MultilinearPoly& estimator, const PartitionMatroid& mat,
                          std::span<const double> y) {
  const std::size_t n = mat.ground_size();
  if (estimator.ground_size() != n) throw InputError("estimator and matroid sizes differ");
  if (!mat.in_polytope(y)) throw InputError("pipage input is not in the matroid polytope");

  const simd::CompiledPoly g(estimator);
  std::vector<double> cur(y.begin(), y.end());
  for (auto& v : cur) v = snap(v);

  PipageResult res;
  double current = g.evaluate(cur);
  res.estimator_values.push_back(current);
  std::vector<double> trial(n);
  std::vector<Index> frac;

  for (const auto& block : mat.blocks()) {
    for (;;) {
      frac.clear();
      for (Index i : block) {
        if (fractional(cur[i])) frac.push_back(i);
      }
      if (frac.empty()) break;

      if (frac.size() >= 2) {
        const Index i = frac[0];
        const Index j = frac[1];
        const double up = std::min(1.0 - cur[i], cur[j]);    // raise i, lower j
        const double down = std::min(cur[i], 1.0 - cur[j]);  // lower i, raise j

        trial = cur;
        trial[i] = up == 1.0 - cur[i] ? 1.0 : snap(cur[i] + up);
        trial[j] = up == cur[j] ? 0.0 : snap(cur[j] - up);
        const std::vector<double> raise_i = trial;
        const double value_up = g.evaluate(raise_i);

        trial = cur;
        trial[i] = down == cur[i] ? 0.0 : snap(cur[i] - down);
        trial[j] = down == 1.0 - cur[j] ? 1.0 : snap(cur[j] + down);
        const double value_down = g.evaluate(trial);

        if (value_up >= value_down) {
          cur = raise_i;
          current = value_up;
        } else {
          cur = trial;
          current = value_down;
        }
      } else {
        // A lone fractional coordinate; raise it only if the block has room.
        const Index i = frac[0];
        std::size_t ones = 0;
        for (Index b : block) ones += cur[b] == 1.0 ? 1 : 0;
        const bool room = ones < mat.capacities()[mat.block_of(i)];
        trial = cur;
        trial[i] = 1.0;
        const double value_one = room ? g.evaluate(trial) : -std::numeric_limits<double>::infinity();
        if (value_one >= current) {
          cur[i] = 1.0;
          current = value_one;
        } else {
          cur[i] = 0.0;
          current = g.evaluate(cur);
        }
      }
      ++res.rounds;
      res.estimator_values.push_back(current);
    }
  }

  res.x.resize(n);
  for (std::size_t i = 0; i < n; ++i) res.x[i] = cur[i] >= 0.5 ? 1 : 0;
  if (!mat.is_independent(res.x)) throw std::logic_error("pipage produced a dependent set");
  return res;
}

BinaryVector swap_round(const PartitionMatroid& mat, std::span<const GreedyStep> combo, std::uint64_t seed) {
  if (combo.empty()) throw InputError("swap rounding needs at least one base");
  double total = 0.0;
  std::vector<BinaryVector> bases;
  bases.reserve(combo.size());
  for (const auto& step : combo) {
    if (!(step.gamma >= 0.0)) throw InputError("negative convex weight");
    total += step.gamma;
    if (!mat.is_independent(step.vertex)) throw InputError("swap rounding given a dependent set");
    bases.push_back(mat.pad_to_base(step.vertex));
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw InputError("convex weights sum to " + std::to_string(total) + ", not 1");
  }

  std::mt19937_64 engine(seed);
  auto uniform = [&] { return static_cast<double>(engine() >> 11) * 0x1p-53; };

  BinaryVector merged = bases[0];
  double mass = combo[0].gamma;
  for (std::size_t k = 1; k < bases.size(); ++k) {
    BinaryVector other = bases[k];
    const double gamma = combo[k].gamma;
    for (;;) {
      // First element the merged base has and the other lacks, then a partner
      // in the same block the other has and the merged base lacks.
      std::size_t i = 0;
      while (i < merged.size() && !(merged[i] == 1 && other[i] == 0)) ++i;
      if (i == merged.size()) break;
      const auto& block = mat.blocks()[mat.block_of(static_cast<Index>(i))];
      Index partner = 0;
      bool found = false;
      for (Index p : block) {
        if (other[p] == 1 && merged[p] == 0) {
          partner = p;
          found = true;
          break;
        }
      }
      if (!found) throw std::logic_error("swap rounding: bases differ in block cardinality");
      const double keep_merged = mass + gamma > 0.0 ? mass / (mass + gamma) : 1.0;
      if (uniform() < keep_merged) {
        other[i] = 1;
        other[partner] = 0;
      } else {
        merged[i] = 0;
        merged[partner] = 1;
      }
    }
    mass += gamma;
  }
  return merged;
}

PipageCertificate pipage_certificate(const CompositeObjective& obj, const PartitionMatroid& mat,
                                     std::span<const double> y, const BinaryVector& x_out, unsigned order,
                                     std::size_t max_ground) {
  if (!mat.is_independent(x_out)) throw InputError("rounded point is not independent");
  PipageCertificate c;
  c.relaxation = relaxation_exact(obj, y, max_ground);
  c.lhs = exact_value(obj, x_out);
  c.residual = residual_total(obj, order);
  c.rhs = c.relaxation - 2.0 * (static_cast<double>(obj.ground_size()) + 1.0) * c.residual;
  return c;
}

}  // namespace polysub
