#include "polysub/simd/kernels.hpp"

namespace polysub::simd {

namespace {

double block_value(const TermBlock& block, const double* lit_values) {
  const std::size_t n = block.count;
  double sum = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    double prod = block.coeff[t];
    for (std::size_t k = 0; k < block.degree; ++k) prod *= lit_values[block.lits[k * n + t]];
    sum += prod;
  }
  return sum;
}

void block_gradient(const TermBlock& block, const double* lit_values, double* lit_grad,
                    double* scratch) {
  const std::size_t n = block.count;
  const std::size_t d = block.degree;
  double* prefix = scratch;
  for (std::size_t t = 0; t < n; ++t) {
    // prefix[k] = coeff * prod_{m < k} value_m
    prefix[0] = block.coeff[t];
    for (std::size_t k = 0; k + 1 < d; ++k) prefix[k + 1] = prefix[k] * lit_values[block.lits[k * n + t]];
    double suffix = 1.0;
    for (std::size_t k = d; k-- > 0;) {
      const std::int32_t lit = block.lits[k * n + t];
      lit_grad[lit] += prefix[k] * suffix;
      suffix *= lit_values[lit];
    }
  }
}

void bernoulli(const double* uniforms, const double* probs, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = uniforms[i] < probs[i] ? 1.0 : 0.0;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void literal_table(const double* y, double* lit_values, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    lit_values[2 * i] = y[i];
    lit_values[2 * i + 1] = 1.0 - y[i];
  }
}

}  // namespace

namespace detail {
const KernelTable scalar_table{&block_value, &block_gradient, &bernoulli, &axpy, &literal_table};
}  // namespace detail

}  // namespace polysub::simd
