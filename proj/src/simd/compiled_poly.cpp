#include "polysub/simd/compiled_poly.hpp"

#include <algorithm>
#include <map>

#include "polysub/error.hpp"

namespace polysub::simd {

CompiledPoly::CompiledPoly(const MultilinearPoly& p) : ground_size_(p.ground_size()) {
  std::vector<std::int32_t> local_of(ground_size_, -1);
  const auto terms = p.sorted_terms();
  for (const auto& m : terms) {
    for (LiteralCode code : m.literals) {
      const Index v = literal_var(code);
      if (local_of[v] < 0) {
        local_of[v] = 0;
        vars_.push_back(v);
      }
    }
  }
  std::sort(vars_.begin(), vars_.end());
  for (std::size_t k = 0; k < vars_.size(); ++k) local_of[vars_[k]] = static_cast<std::int32_t>(k);

  std::map<std::size_t, std::vector<const Monomial*>> by_degree;
  for (const auto& m : terms) {
    if (m.literals.empty()) {
      constant_ += m.coefficient;
    } else {
      by_degree[m.literals.size()].push_back(&m);
    }
  }
  term_count_ = terms.size();
  for (const auto& [degree, members] : by_degree) {
    Bucket b;
    b.degree = static_cast<std::uint32_t>(degree);
    const std::size_t n = members.size();
    b.coeff.resize(n);
    b.lits.resize(degree * n);
    for (std::size_t t = 0; t < n; ++t) {
      b.coeff[t] = members[t]->coefficient;
      for (std::size_t k = 0; k < degree; ++k) {
        const LiteralCode code = members[t]->literals[k];
        b.lits[k * n + t] = 2 * local_of[literal_var(code)] + (literal_negated(code) ? 1 : 0);
      }
    }
    max_degree_ = std::max(max_degree_, degree);
    buckets_.push_back(std::move(b));
  }
}

double CompiledPoly::evaluate_literals(const double* lit_values, Isa isa) const {
  const auto& kt = kernels(isa);
  double sum = constant_;
  for (const auto& b : buckets_) sum += kt.block_value(b.view(), lit_values);
  return sum;
}

void CompiledPoly::gradient_literals(const double* lit_values, double* lit_grad, double* scratch,
                                     Isa isa) const {
  const auto& kt = kernels(isa);
  for (const auto& b : buckets_) kt.block_gradient(b.view(), lit_values, lit_grad, scratch);
}

double CompiledPoly::evaluate(std::span<const double> y, Isa isa) const {
  if (y.size() != ground_size_) throw InputError("point length does not match ground size");
  std::vector<double> lit(2 * vars_.size());
  for (std::size_t k = 0; k < vars_.size(); ++k) {
    lit[2 * k] = y[vars_[k]];
    lit[2 * k + 1] = 1.0 - y[vars_[k]];
  }
  return evaluate_literals(lit.data(), isa);
}

void CompiledPoly::gradient(std::span<const double> y, std::span<double> out, Isa isa) const {
  if (y.size() != ground_size_ || out.size() != ground_size_) {
    throw InputError("point length does not match ground size");
  }
  std::vector<double> lit(2 * vars_.size());
  for (std::size_t k = 0; k < vars_.size(); ++k) {
    lit[2 * k] = y[vars_[k]];
    lit[2 * k + 1] = 1.0 - y[vars_[k]];
  }
  std::vector<double> lit_grad(lit.size(), 0.0);
  std::vector<double> scratch(scratch_size());
  gradient_literals(lit.data(), lit_grad.data(), scratch.data(), isa);
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t k = 0; k < vars_.size(); ++k) out[vars_[k]] = lit_grad[2 * k] - lit_grad[2 * k + 1];
}

}  // namespace polysub::simd
