#include <cstdlib>
#include <string_view>

#include "polysub/simd/kernels.hpp"

namespace polysub::simd {

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
  }
  return "unknown";
}

bool isa_available(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(POLYSUB_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

Isa best_isa() noexcept { return isa_available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar; }

Isa active_isa() noexcept {
  static const Isa chosen = [] {
    const char* env = std::getenv("POLYSUB_ISA");
    if (env != nullptr && std::string_view(env) == "scalar") return Isa::Scalar;
    return best_isa();
  }();
  return chosen;
}

const KernelTable& kernels(Isa isa) noexcept {
#if defined(POLYSUB_HAVE_AVX2)
  if (isa == Isa::Avx2 && isa_available(Isa::Avx2)) return detail::avx2_table;
#else
  (void)isa;
#endif
  return detail::scalar_table;
}

}  // namespace polysub::simd
