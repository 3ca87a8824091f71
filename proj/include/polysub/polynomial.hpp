#pragma once

// Sparse multilinear polynomials over binary variables.
//
// A monomial is a product of literals, each literal being either x_i or its
// complement (1 - x_i). Because x_i^2 = x_i and (1 - x_i)^2 = (1 - x_i) on
// {0,1}, products of monomials reduce to unions of literal sets, and a product
// that contains both x_i and (1 - x_i) vanishes. Complemented literals keep
// coverage-type functions 1 - prod(1 - x_i) compact; a polynomial that only
// uses positive literals is the usual sum of c * prod x_i.
//
// Evaluating at a fractional y gives the expectation under independent
// Bernoulli(y_i) coordinates, so evaluate() is the multilinear relaxation.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace polysub {

using Index = std::uint32_t;

// Literal code: 2 * variable + (1 if complemented).
using LiteralCode = std::uint32_t;

constexpr LiteralCode positive_literal(Index var) noexcept { return var << 1; }
constexpr LiteralCode complement_literal(Index var) noexcept { return (var << 1) | 1U; }
constexpr Index literal_var(LiteralCode code) noexcept { return code >> 1; }
constexpr bool literal_negated(LiteralCode code) noexcept { return (code & 1U) != 0; }

// Literal codes in strictly increasing variable order; empty means the
// constant monomial.
using MonomialKey = std::vector<LiteralCode>;

struct MonomialKeyHash {
  std::size_t operator()(const MonomialKey& key) const noexcept;
};

struct Monomial {
  double coefficient = 0.0;
  MonomialKey literals;
};

struct ArithOptions {
  // Coefficients with |c| below this are dropped after arithmetic. Exact zeros
  // are always dropped.
  double drop_tolerance = 1e-15;

  static ArithOptions exact() { return ArithOptions{0.0}; }
};

class MultilinearPoly {
 public:
  using TermMap = std::unordered_map<MonomialKey, double, MonomialKeyHash>;

  MultilinearPoly() = default;
  explicit MultilinearPoly(std::size_t ground_size) : ground_size_(ground_size) {}

  static MultilinearPoly constant(std::size_t ground_size, double c);
  static MultilinearPoly variable(std::size_t ground_size, Index i, double c = 1.0);
  // c * (1 - x_i) as one complemented literal.
  static MultilinearPoly complement(std::size_t ground_size, Index i, double c = 1.0);
  static MultilinearPoly from_monomials(std::size_t ground_size, std::span<const Monomial> monomials);

  // Adds c * prod(literals) to the polynomial. The literal list may be
  // unsorted and may repeat literals; it is canonicalized here. A list holding
  // both x_i and (1 - x_i) is identically zero and is ignored.
  void add_term(MonomialKey literals, double c);

  // Positive-literal convenience: adds c * prod_{i in vars} x_i.
  void add_positive_term(std::span<const Index> vars, double c);

  std::size_t ground_size() const noexcept { return ground_size_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t term_count() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t degree() const noexcept;
  std::size_t literal_count() const noexcept;
  bool has_complemented_literals() const noexcept;

  // Coefficient of the monomial with exactly these (canonical) literals, 0 if absent.
  double coefficient(const MonomialKey& literals) const;
  double constant_term() const { return coefficient({}); }

  // Terms in lexicographic order of their literal codes.
  std::vector<Monomial> sorted_terms() const;

  // Text form: header line `N=<ground_size>`, then one `coeff lit lit ...`
  // line per term in sorted order. A literal is `i` for x_i or `~i` for
  // (1 - x_i). Coefficients are written in shortest round-trip form.
  std::string to_text() const;
  static MultilinearPoly from_text(std::string_view text);

  friend bool operator==(const MultilinearPoly& a, const MultilinearPoly& b) {
    return a.ground_size_ == b.ground_size_ && a.terms_ == b.terms_;
  }

 private:
  friend MultilinearPoly add(const MultilinearPoly&, const MultilinearPoly&, ArithOptions);
  friend MultilinearPoly scale(const MultilinearPoly&, double, ArithOptions);
  friend MultilinearPoly multiply(const MultilinearPoly&, const MultilinearPoly&, ArithOptions);
  friend MultilinearPoly pin(const MultilinearPoly&, Index, int);
  friend MultilinearPoly prune(const MultilinearPoly&, double);

  void accumulate(MonomialKey key, double c);
  void drop_small(double tol);

  std::size_t ground_size_ = 0;
  TermMap terms_;
};

MultilinearPoly add(const MultilinearPoly& p, const MultilinearPoly& q, ArithOptions opts = {});
MultilinearPoly scale(const MultilinearPoly& p, double a, ArithOptions opts = {});
MultilinearPoly multiply(const MultilinearPoly& p, const MultilinearPoly& q, ArithOptions opts = {});
MultilinearPoly power(const MultilinearPoly& p, unsigned exponent, ArithOptions opts = {});
// Fixes x_i = b (0 or 1).
MultilinearPoly pin(const MultilinearPoly& p, Index i, int b);
// Drops every term with |c| < tol.
MultilinearPoly prune(const MultilinearPoly& p, double tol);
// Rewrites every (1 - x_i) literal as 1 - x_i, producing positive literals only.
MultilinearPoly to_positive_form(const MultilinearPoly& p, ArithOptions opts = ArithOptions::exact());

// Multilinear relaxation value at y in [0,1]^N.
double evaluate(const MultilinearPoly& p, std::span<const double> y);
// p(y with y_i = 1) - p(y with y_i = 0).
double grad_coord(const MultilinearPoly& p, std::span<const double> y, Index i);
std::vector<double> gradient(const MultilinearPoly& p, std::span<const double> y);

// Throws InputError on length mismatch or coordinates outside [0,1] by more
// than 1e-9.
void check_unit_box(std::span<const double> y, std::size_t ground_size);

}  // namespace polysub
