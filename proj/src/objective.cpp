#include "polysub/objective.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "polysub/error.hpp"

namespace polysub {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void require_binary(std::span<const double> x, std::size_t n) {
  if (x.size() != n) throw InputError("binary point has wrong length");
  for (double v : x) {
    if (v != 0.0 && v != 1.0) throw InputError("point is not binary");
  }
}

void require_guard(std::size_t n, std::size_t max_ground) {
  if (n > max_ground) {
    throw GuardError("exhaustive oracle refused: N=" + std::to_string(n) + " exceeds guard " +
                     std::to_string(max_ground));
  }
}

// Values of f at every binary point, indexed by bitmask (bit i = x_i).
std::vector<double> value_table(const CompositeObjective& obj) {
  const std::size_t n = obj.ground_size();
  std::vector<double> table(std::size_t{1} << n);
  std::vector<double> x(n);
  for (std::size_t mask = 0; mask < table.size(); ++mask) {
    for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<double>((mask >> i) & 1U);
    table[mask] = exact_value(obj, x);
  }
  return table;
}

// sum_mask table[mask] * P_y(mask), optionally treating coordinate `skip` as
// absent from the product (it is then pinned by the caller's mask filter).
double expectation(const std::vector<double>& table, std::span<const double> y,
                   std::size_t skip = static_cast<std::size_t>(-1), int pinned = -1) {
  const std::size_t n = y.size();
  double sum = 0.0;
  for (std::size_t mask = 0; mask < table.size(); ++mask) {
    if (skip < n && static_cast<int>((mask >> skip) & 1U) != pinned) continue;
    double p = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == skip) continue;
      p *= ((mask >> i) & 1U) ? y[i] : 1.0 - y[i];
    }
    sum += table[mask] * p;
  }
  return sum;
}

}  // namespace

std::string to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::Generic:
      return "generic";
    case ProblemKind::Summarization:
      return "sm";
    case ProblemKind::Influence:
      return "im";
    case ProblemKind::FacilityLocation:
      return "fl";
    case ProblemKind::CacheNetwork:
      return "cn";
  }
  return "generic";
}

ProblemKind problem_kind_from_string(const std::string& s) {
  if (s == "generic") return ProblemKind::Generic;
  if (s == "sm") return ProblemKind::Summarization;
  if (s == "im") return ProblemKind::Influence;
  if (s == "fl") return ProblemKind::FacilityLocation;
  if (s == "cn") return ProblemKind::CacheNetwork;
  throw InputError("unknown problem kind `" + s + "`");
}

CompositeObjective::CompositeObjective(std::size_t ground_size, std::vector<ObjectiveTerm> terms,
                                       double offset, ProblemKind kind)
    : ground_size_(ground_size), terms_(std::move(terms)), offset_(offset), kind_(kind) {
  for (const auto& t : terms_) {
    if (t.inner.ground_size() != ground_size_) {
      throw InputError("inner polynomial ground size " + std::to_string(t.inner.ground_size()) +
                       " differs from objective ground size " + std::to_string(ground_size_));
    }
    if (!std::isfinite(t.weight)) throw InputError("non-finite term weight");
  }
}

unsigned CompositeObjective::min_supported_order() const noexcept {
  for (const auto& t : terms_) {
    if (t.kernel.kind() == KernelKind::QueueDelay) return 1;
  }
  return 0;
}

std::string EstimatorTag::label() const {
  switch (kind) {
    case Kind::Poly:
      return "POLY" + std::to_string(parameter);
    case Kind::Sample:
      return "SAMP" + std::to_string(parameter);
    case Kind::Exact:
      return "EXACT";
  }
  return "EXACT";
}

EstimatorTag EstimatorTag::parse(const std::string& label) {
  auto number = [&](std::size_t prefix) {
    const std::string digits = label.substr(prefix);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
      throw InputError("bad estimator label `" + label + "`");
    }
    return std::stoull(digits);
  };
  if (label == "EXACT") return exact();
  if (label.rfind("POLY", 0) == 0) return poly(static_cast<unsigned>(number(4)));
  if (label.rfind("SAMP", 0) == 0) {
    const auto t = number(4);
    if (t == 0) throw InputError("sample count must be >= 1");
    return sample(t);
  }
  throw InputError("bad estimator label `" + label + "`");
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) noexcept {
  // splitmix64 finalizer over a golden-ratio stride
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double exact_value(const CompositeObjective& obj, std::span<const double> x) {
  require_binary(x, obj.ground_size());
  double f = obj.offset();
  for (const auto& t : obj.terms()) f += t.weight * eval_kernel(t.kernel, evaluate(t.inner, x));
  return f;
}

double exact_value(const CompositeObjective& obj, const BinaryVector& x) {
  const auto xr = to_real(x);
  return exact_value(obj, xr);
}

MultilinearPoly build_poly_estimator(const CompositeObjective& obj, unsigned order, ArithOptions opts) {
  const std::size_t n = obj.ground_size();
  MultilinearPoly total = MultilinearPoly::constant(n, obj.offset());
  for (const auto& t : obj.terms()) {
    if (t.kernel.kind() == KernelKind::Identity) {
      total = add(total, scale(t.inner, t.weight, opts), opts);
      continue;
    }
    if (order < obj.min_supported_order()) {
      throw InputError("expansion order " + std::to_string(order) + " not supported by " +
                       to_string(t.kernel.kind()) + " kernel");
    }
    const TaylorPolynomial tp = taylor(t.kernel, order);
    // Horner in u = g - center; x_i^2 = x_i is applied by every multiply.
    const MultilinearPoly u = add(t.inner, MultilinearPoly::constant(n, -tp.center), opts);
    MultilinearPoly acc = MultilinearPoly::constant(n, tp.coefficients.back());
    for (std::size_t l = tp.coefficients.size() - 1; l-- > 0;) {
      acc = add(multiply(acc, u, opts), MultilinearPoly::constant(n, tp.coefficients[l]), opts);
    }
    total = add(total, scale(acc, t.weight, opts), opts);
  }
  return total;
}

GradientEstimate grad_poly(const MultilinearPoly& estimator, std::span<const double> y) {
  check_unit_box(y, estimator.ground_size());
  PolyEstimator pe(estimator, 0);
  auto est = pe.gradient(y);
  est.tag = EstimatorTag::poly(0);
  return est;
}

PolyEstimator::PolyEstimator(const MultilinearPoly& estimator, unsigned order)
    : compiled_(estimator), order_(order) {}

GradientEstimate PolyEstimator::gradient(std::span<const double> y) const {
  const auto start = Clock::now();
  GradientEstimate est;
  est.tag = EstimatorTag::poly(order_);
  est.values.assign(compiled_.ground_size(), 0.0);
  compiled_.gradient(y, est.values);
  est.wall_time = seconds_since(start);
  return est;
}

double PolyEstimator::value(std::span<const double> y) const { return compiled_.evaluate(y); }

SampleEstimator::SampleEstimator(const CompositeObjective& obj) : obj_(&obj) {
  inner_.reserve(obj.term_count());
  for (const auto& t : obj.terms()) {
    inner_.emplace_back(t.inner);
    scratch_size_ = std::max(scratch_size_, inner_.back().scratch_size());
    max_local_ = std::max(max_local_, inner_.back().local_size());
  }
}

GradientEstimate SampleEstimator::gradient(std::span<const double> y, const SampleConfig& cfg) const {
  const std::size_t n = obj_->ground_size();
  check_unit_box(y, n);
  if (cfg.samples == 0) throw InputError("sample count must be >= 1");
  const auto start = Clock::now();
  const auto& kt = simd::kernels();

  std::vector<double> acc(n, 0.0);
  std::vector<double> uniforms(n), x(n);
  std::vector<double> lit(2 * max_local_), lit_grad(2 * max_local_), scratch(scratch_size_);
  double value_sum = 0.0;

  for (std::uint64_t l = 0; l < cfg.samples; ++l) {
    std::mt19937_64 engine(derive_seed(cfg.seed, l));
    for (auto& u : uniforms) u = static_cast<double>(engine() >> 11) * 0x1p-53;
    kt.bernoulli(uniforms.data(), y.data(), x.data(), n);

    double f = obj_->offset();
    for (std::size_t j = 0; j < inner_.size(); ++j) {
      const auto& term = obj_->terms()[j];
      const auto& g = inner_[j];
      const auto vars = g.vars();
      for (std::size_t k = 0; k < vars.size(); ++k) {
        lit[2 * k] = x[vars[k]];
        lit[2 * k + 1] = 1.0 - x[vars[k]];
      }
      const double gx = g.evaluate_literals(lit.data());
      f += term.weight * eval_kernel(term.kernel, gx);
      std::fill(lit_grad.begin(), lit_grad.begin() + static_cast<std::ptrdiff_t>(2 * vars.size()), 0.0);
      g.gradient_literals(lit.data(), lit_grad.data(), scratch.data());
      for (std::size_t k = 0; k < vars.size(); ++k) {
        const double dg = lit_grad[2 * k] - lit_grad[2 * k + 1];
        const double xi = x[vars[k]];
        // g is affine in x_i, so g([x]_{+i}) and g([x]_{-i}) follow from g(x) and dg.
        const double g_up = gx + (1.0 - xi) * dg;
        const double g_down = gx - xi * dg;
        acc[vars[k]] += term.weight * (eval_kernel(term.kernel, g_up) - eval_kernel(term.kernel, g_down));
      }
    }
    value_sum += f;
  }

  const double inv = 1.0 / static_cast<double>(cfg.samples);
  for (auto& a : acc) a *= inv;
  GradientEstimate est;
  est.values = std::move(acc);
  est.tag = EstimatorTag::sample(cfg.samples);
  est.value = value_sum * inv;
  est.wall_time = seconds_since(start);
  return est;
}

double SampleEstimator::value(std::span<const double> y, const SampleConfig& cfg) const {
  const std::size_t n = obj_->ground_size();
  check_unit_box(y, n);
  if (cfg.samples == 0) throw InputError("sample count must be >= 1");
  const auto& kt = simd::kernels();
  std::vector<double> uniforms(n), x(n), lit(2 * max_local_);
  double value_sum = 0.0;
  for (std::uint64_t l = 0; l < cfg.samples; ++l) {
    std::mt19937_64 engine(derive_seed(cfg.seed, l));
    for (auto& u : uniforms) u = static_cast<double>(engine() >> 11) * 0x1p-53;
    kt.bernoulli(uniforms.data(), y.data(), x.data(), n);
    double f = obj_->offset();
    for (std::size_t j = 0; j < inner_.size(); ++j) {
      const auto vars = inner_[j].vars();
      for (std::size_t k = 0; k < vars.size(); ++k) {
        lit[2 * k] = x[vars[k]];
        lit[2 * k + 1] = 1.0 - x[vars[k]];
      }
      const auto& term = obj_->terms()[j];
      f += term.weight * eval_kernel(term.kernel, inner_[j].evaluate_literals(lit.data()));
    }
    value_sum += f;
  }
  return value_sum / static_cast<double>(cfg.samples);
}

double SampleEstimator::remainder_value(std::span<const double> y, const SampleConfig& cfg, unsigned order) const {
  const std::size_t n = obj_->ground_size();
  check_unit_box(y, n);
  if (cfg.samples == 0) throw InputError("sample count must be >= 1");
  std::vector<TaylorPolynomial> truncated;
  truncated.reserve(inner_.size());
  for (const auto& t : obj_->terms()) truncated.push_back(taylor(t.kernel, order));
  const auto& kt = simd::kernels();
  std::vector<double> uniforms(n), x(n), lit(2 * max_local_);
  double sum = 0.0;
  for (std::uint64_t l = 0; l < cfg.samples; ++l) {
    std::mt19937_64 engine(derive_seed(cfg.seed, l));
    for (auto& u : uniforms) u = static_cast<double>(engine() >> 11) * 0x1p-53;
    kt.bernoulli(uniforms.data(), y.data(), x.data(), n);
    double r = 0.0;
    for (std::size_t j = 0; j < inner_.size(); ++j) {
      const auto vars = inner_[j].vars();
      for (std::size_t k = 0; k < vars.size(); ++k) {
        lit[2 * k] = x[vars[k]];
        lit[2 * k + 1] = 1.0 - x[vars[k]];
      }
      const auto& term = obj_->terms()[j];
      const double gx = inner_[j].evaluate_literals(lit.data());
      r += term.weight * (eval_kernel(term.kernel, gx) - eval_taylor(truncated[j], gx));
    }
    sum += r;
  }
  return sum / static_cast<double>(cfg.samples);
}

GradientEstimate grad_sample(const CompositeObjective& obj, std::span<const double> y,
                             const SampleConfig& cfg) {
  return SampleEstimator(obj).gradient(y, cfg);
}

double relaxation_exact(const CompositeObjective& obj, std::span<const double> y, std::size_t max_ground) {
  require_guard(obj.ground_size(), max_ground);
  check_unit_box(y, obj.ground_size());
  return expectation(value_table(obj), y);
}

GradientEstimate grad_exact(const CompositeObjective& obj, std::span<const double> y,
                            std::size_t max_ground) {
  require_guard(obj.ground_size(), max_ground);
  check_unit_box(y, obj.ground_size());
  const auto start = Clock::now();
  const auto table = value_table(obj);
  GradientEstimate est;
  est.tag = EstimatorTag::exact();
  est.values.resize(obj.ground_size());
  for (std::size_t i = 0; i < obj.ground_size(); ++i) {
    est.values[i] = expectation(table, y, i, 1) - expectation(table, y, i, 0);
  }
  est.value = expectation(table, y);
  est.wall_time = seconds_since(start);
  return est;
}

std::vector<double> epsilon_oracle(const CompositeObjective& obj, std::span<const double> y,
                                   unsigned order, std::size_t max_ground) {
  const std::size_t n = obj.ground_size();
  require_guard(n, max_ground);
  check_unit_box(y, n);
  std::vector<TaylorPolynomial> expansions;
  for (const auto& t : obj.terms()) expansions.push_back(taylor(t.kernel, order));

  std::vector<double> residual(std::size_t{1} << n);
  std::vector<double> x(n);
  for (std::size_t mask = 0; mask < residual.size(); ++mask) {
    for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<double>((mask >> i) & 1U);
    double r = 0.0;
    for (std::size_t j = 0; j < obj.term_count(); ++j) {
      const auto& t = obj.terms()[j];
      const double s = evaluate(t.inner, x);
      r += std::abs(t.weight) * std::abs(eval_kernel(t.kernel, s) - eval_taylor(expansions[j], s));
    }
    residual[mask] = r;
  }
  std::vector<double> eps(n);
  for (std::size_t i = 0; i < n; ++i) {
    eps[i] = expectation(residual, y, i, 1) + expectation(residual, y, i, 0);
  }
  return eps;
}

double bias_bound(ProblemKind kind, std::size_t M, std::size_t N, unsigned order,
                  std::optional<double> s_bar) {
  if (M == 0 || N == 0) throw InputError("bias bound needs positive M and N");
  const double base = std::sqrt(static_cast<double>(N)) /
                      ((order + 1.0) * std::ldexp(1.0, static_cast<int>(order)));
  switch (kind) {
    case ProblemKind::Summarization:
      return static_cast<double>(M) * base;
    case ProblemKind::Influence:
    case ProblemKind::FacilityLocation:
      return base;
    case ProblemKind::CacheNetwork: {
      if (!s_bar) throw InputError("cache-network bias bound needs s_bar");
      if (!(*s_bar >= 0.0 && *s_bar < 1.0)) throw InputError("s_bar must lie in [0, 1)");
      return 2.0 * static_cast<double>(M) * std::sqrt(static_cast<double>(N)) *
             std::pow(*s_bar, order + 1.0) / (1.0 - *s_bar);
    }
    case ProblemKind::Generic:
      break;
  }
  throw InputError("no closed-form bias bound for generic objectives");
}

double residual_total(const CompositeObjective& obj, unsigned order) {
  double r = 0.0;
  for (const auto& t : obj.terms()) r += std::abs(t.weight) * residual_bound(t.kernel, order);
  return r;
}

double bias_bound(const CompositeObjective& obj, unsigned order) {
  return 2.0 * std::sqrt(static_cast<double>(obj.ground_size())) * residual_total(obj, order);
}

double lipschitz_P(const CompositeObjective& obj, const PartitionMatroid& mat, double max_bases) {
  if (mat.ground_size() != obj.ground_size()) throw InputError("matroid and objective sizes differ");
  if (mat.base_count() <= max_bases) {
    double best = -std::numeric_limits<double>::infinity();
    mat.for_each_base([&](const BinaryVector& b) { best = std::max(best, exact_value(obj, b)); },
                      max_bases);
    return 2.0 * best;
  }
  const std::vector<double> ones(obj.ground_size(), 1.0);
  return 2.0 * exact_value(obj, ones);
}

std::uint64_t theoretical_sample_count(std::size_t N, std::size_t d) {
  if (N == 0 || d == 0) throw InputError("sample count formula needs positive N and d");
  const double delta = 1.0 / (40.0 * static_cast<double>(d) * static_cast<double>(d) * static_cast<double>(N));
  return static_cast<std::uint64_t>(std::ceil(10.0 / (delta * delta) * (1.0 + std::log(static_cast<double>(N)))));
}

}  // namespace polysub
