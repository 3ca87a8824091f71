#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "polysub/polynomial.hpp"

namespace polysub {

using BinaryVector = std::vector<std::uint8_t>;

std::vector<double> to_real(std::span<const std::uint8_t> x);

// Partition matroid: disjoint blocks covering {0..N-1}, at most capacity[l]
// elements chosen from block l. A uniform matroid is the one-block case.
//
// Capacities may be 0, which freezes a block (used for ground-set elements
// that exist in the objective but may never be selected).
class PartitionMatroid {
 public:
  PartitionMatroid() = default;
  // Capacities larger than their block are clipped to the block size.
  PartitionMatroid(std::size_t ground_size, std::vector<std::vector<Index>> blocks,
                   std::vector<std::size_t> capacities);

  static PartitionMatroid uniform(std::size_t ground_size, std::size_t k);
  // Contiguous blocks of near-equal size (the first N % m blocks get one extra).
  static PartitionMatroid equal_blocks(std::size_t ground_size, std::size_t m, std::size_t k);

  std::size_t ground_size() const noexcept { return ground_size_; }
  std::size_t block_count() const noexcept { return blocks_.size(); }
  const std::vector<std::vector<Index>>& blocks() const noexcept { return blocks_; }
  const std::vector<std::size_t>& capacities() const noexcept { return capacities_; }
  std::size_t block_of(Index i) const { return block_of_.at(i); }
  // Sum of capacities.
  std::size_t rank() const noexcept;

  bool is_independent(std::span<const std::uint8_t> x) const;
  bool in_polytope(std::span<const double> y, double tol = 1e-9) const;

  // Vertex of P(M) maximizing <m, w>: per block, the top-capacity coordinates
  // with w > 0, ties to the lower index.
  BinaryVector lp_maximize(std::span<const double> w) const;

  // Adds unselected elements (lowest index first) until every block is full.
  BinaryVector pad_to_base(std::span<const std::uint8_t> x) const;

  // prod_l C(|B_l|, k_l), saturating.
  double base_count() const;
  // Visits every base (exactly k_l per block). Throws GuardError when
  // base_count() exceeds max_bases.
  void for_each_base(const std::function<void(const BinaryVector&)>& visit,
                     double max_bases = 1e6) const;
  std::vector<BinaryVector> enumerate_bases(double max_bases = 1e6) const;

 private:
  std::size_t ground_size_ = 0;
  std::vector<std::vector<Index>> blocks_;
  std::vector<std::size_t> capacities_;
  std::vector<std::size_t> block_of_;
};

}  // namespace polysub
