#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "polysub/polynomial.hpp"
#include "polysub/simd/kernels.hpp"

namespace polysub::simd {

// A MultilinearPoly frozen into degree-bucketed structure-of-arrays blocks
// for repeated evaluation. Variables are renumbered to a dense local range;
// vars()[local] gives the global index.
class CompiledPoly {
 public:
  CompiledPoly() = default;
  explicit CompiledPoly(const MultilinearPoly& p);

  std::size_t ground_size() const noexcept { return ground_size_; }
  std::span<const Index> vars() const noexcept { return vars_; }
  std::size_t local_size() const noexcept { return vars_.size(); }
  std::size_t term_count() const noexcept { return term_count_; }
  double constant() const noexcept { return constant_; }

  // Value at a global point y (length ground_size). No range checks.
  double evaluate(std::span<const double> y, Isa isa = active_isa()) const;
  // Dense gradient at y, written to out (length ground_size, overwritten).
  void gradient(std::span<const double> y, std::span<double> out, Isa isa = active_isa()) const;

  // Local-coordinate entry points: lit_values has 2 * local_size entries laid
  // out as by KernelTable::literal_table. lit_grad (2 * local_size) is
  // accumulated into; the derivative w.r.t. local var v is
  // lit_grad[2v] - lit_grad[2v + 1].
  double evaluate_literals(const double* lit_values, Isa isa = active_isa()) const;
  void gradient_literals(const double* lit_values, double* lit_grad, double* scratch,
                         Isa isa = active_isa()) const;
  std::size_t scratch_size() const noexcept { return 8 * (max_degree_ + 1); }

 private:
  struct Bucket {
    std::uint32_t degree = 0;
    std::vector<double> coeff;
    std::vector<std::int32_t> lits;
    TermBlock view() const {
      return TermBlock{degree, static_cast<std::uint32_t>(coeff.size()), coeff.data(), lits.data()};
    }
  };

  std::size_t ground_size_ = 0;
  std::size_t term_count_ = 0;
  std::size_t max_degree_ = 0;
  double constant_ = 0.0;
  std::vector<Index> vars_;
  std::vector<Bucket> buckets_;
};

}  // namespace polysub::simd
