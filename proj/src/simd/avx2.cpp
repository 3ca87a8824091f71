// Compiled with -mavx2 -mfma; only reached after a CPUID check.

#include <immintrin.h>

#include "polysub/simd/kernels.hpp"

namespace polysub::simd {

namespace {

inline __m256d gather_lits(const double* lit_values, const std::int32_t* idx) {
  const __m128i vi = _mm_loadu_si128(reinterpret_cast<const __m128i*>(idx));
  return _mm256_i32gather_pd(lit_values, vi, 8);
}

double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double block_value(const TermBlock& block, const double* lit_values) {
  const std::size_t n = block.count;
  const std::size_t d = block.degree;
  __m256d acc = _mm256_setzero_pd();
  std::size_t t = 0;
  for (; t + 4 <= n; t += 4) {
    __m256d prod = _mm256_loadu_pd(block.coeff + t);
    for (std::size_t k = 0; k < d; ++k) {
      prod = _mm256_mul_pd(prod, gather_lits(lit_values, block.lits + k * n + t));
    }
    acc = _mm256_add_pd(acc, prod);
  }
  double sum = hsum(acc);
  for (; t < n; ++t) {
    double prod = block.coeff[t];
    for (std::size_t k = 0; k < d; ++k) prod *= lit_values[block.lits[k * n + t]];
    sum += prod;
  }
  return sum;
}

void block_gradient(const TermBlock& block, const double* lit_values, double* lit_grad,
                    double* scratch) {
  const std::size_t n = block.count;
  const std::size_t d = block.degree;
  double* vals = scratch;           // 4 * d
  double* prefix = scratch + 4 * d;  // 4 * d
  std::size_t t = 0;
  for (; t + 4 <= n; t += 4) {
    __m256d run = _mm256_loadu_pd(block.coeff + t);
    for (std::size_t k = 0; k < d; ++k) {
      const __m256d v = gather_lits(lit_values, block.lits + k * n + t);
      _mm256_storeu_pd(vals + 4 * k, v);
      _mm256_storeu_pd(prefix + 4 * k, run);
      run = _mm256_mul_pd(run, v);
    }
    __m256d suffix = _mm256_set1_pd(1.0);
    alignas(32) double contrib[4];
    for (std::size_t k = d; k-- > 0;) {
      _mm256_store_pd(contrib, _mm256_mul_pd(_mm256_loadu_pd(prefix + 4 * k), suffix));
      const std::int32_t* idx = block.lits + k * n + t;
      // Lanes may hit the same literal; scatter sequentially.
      lit_grad[idx[0]] += contrib[0];
      lit_grad[idx[1]] += contrib[1];
      lit_grad[idx[2]] += contrib[2];
      lit_grad[idx[3]] += contrib[3];
      suffix = _mm256_mul_pd(suffix, _mm256_loadu_pd(vals + 4 * k));
    }
  }
  for (; t < n; ++t) {
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
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d lt = _mm256_cmp_pd(_mm256_loadu_pd(uniforms + i), _mm256_loadu_pd(probs + i), _CMP_LT_OQ);
    _mm256_storeu_pd(out + i, _mm256_and_pd(lt, one));
  }
  for (; i < n; ++i) out[i] = uniforms[i] < probs[i] ? 1.0 : 0.0;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    // mul then add, not fma, so results match the scalar path bit for bit
    const __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), prod));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void literal_table(const double* y, double* lit_values, std::size_t n) {
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    // (y0, y1) -> (y0, 1 - y0, y1, 1 - y1)
    const __m128d v = _mm_loadu_pd(y + i);
    const __m256d dup = _mm256_permute4x64_pd(_mm256_castpd128_pd256(v), 0x50);
    const __m256d comp = _mm256_sub_pd(one, dup);
    _mm256_storeu_pd(lit_values + 2 * i, _mm256_blend_pd(dup, comp, 0xA));
  }
  for (; i < n; ++i) {
    lit_values[2 * i] = y[i];
    lit_values[2 * i + 1] = 1.0 - y[i];
  }
}

}  // namespace

namespace detail {
const KernelTable avx2_table{&block_value, &block_gradient, &bernoulli, &axpy, &literal_table};
}  // namespace detail

}  // namespace polysub::simd
