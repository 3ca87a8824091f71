#pragma once

// Data-parallel inner loops with a scalar reference implementation and AVX2
// variants. The active instruction set is picked once at startup from CPUID;
// setting POLYSUB_ISA=scalar in the environment forces the reference path.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace polysub::simd {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa) noexcept;
bool isa_available(Isa isa) noexcept;
Isa best_isa() noexcept;
Isa active_isa() noexcept;

// Degree-d block of monomials in structure-of-arrays layout. Literal k of
// term t is lits[k * count + t], an index into the literal-value table
// (2 * local_var for y, 2 * local_var + 1 for 1 - y).
struct TermBlock {
  std::uint32_t degree = 0;
  std::uint32_t count = 0;
  const double* coeff = nullptr;
  const std::int32_t* lits = nullptr;
};

struct KernelTable {
  // sum_t coeff[t] * prod_k lit_values[lits[k][t]]
  double (*block_value)(const TermBlock& block, const double* lit_values);
  // For every term and literal slot k, adds coeff * prod_{m != k} value_m to
  // lit_grad[lits[k][t]]. scratch must hold 8 * degree doubles.
  void (*block_gradient)(const TermBlock& block, const double* lit_values, double* lit_grad,
                         double* scratch);
  // out[i] = uniforms[i] < probs[i] ? 1 : 0
  void (*bernoulli)(const double* uniforms, const double* probs, double* out, std::size_t n);
  // y[i] += a * x[i]
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // lit_values[2i] = y[i], lit_values[2i + 1] = 1 - y[i]
  void (*literal_table)(const double* y, double* lit_values, std::size_t n);
};

const KernelTable& kernels(Isa isa) noexcept;
inline const KernelTable& kernels() noexcept { return kernels(active_isa()); }

namespace detail {
extern const KernelTable scalar_table;
#if defined(POLYSUB_HAVE_AVX2)
extern const KernelTable avx2_table;
#endif
}  // namespace detail

}  // namespace polysub::simd
