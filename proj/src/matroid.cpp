#include "polysub/matroid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "polysub/error.hpp"

namespace polysub {

std::vector<double> to_real(std::span<const std::uint8_t> x) {
  return std::vector<double>(x.begin(), x.end());
}

PartitionMatroid::PartitionMatroid(std::size_t ground_size, std::vector<std::vector<Index>> blocks,
                                   std::vector<std::size_t> capacities)
    : ground_size_(ground_size), blocks_(std::move(blocks)), capacities_(std::move(capacities)) {
  if (blocks_.size() != capacities_.size()) {
    throw InputError("matroid has " + std::to_string(blocks_.size()) + " blocks but " +
                     std::to_string(capacities_.size()) + " capacities");
  }
  constexpr std::size_t kUnassigned = static_cast<std::size_t>(-1);
  block_of_.assign(ground_size_, kUnassigned);
  for (std::size_t l = 0; l < blocks_.size(); ++l) {
    auto& b = blocks_[l];
    std::sort(b.begin(), b.end());
    for (Index i : b) {
      if (i >= ground_size_) throw InputError("block element " + std::to_string(i) + " out of range");
      if (block_of_[i] != kUnassigned) {
        throw InputError("element " + std::to_string(i) + " appears in two blocks");
      }
      block_of_[i] = l;
    }
    capacities_[l] = std::min(capacities_[l], b.size());
  }
  for (std::size_t i = 0; i < ground_size_; ++i) {
    if (block_of_[i] == kUnassigned) {
      throw InputError("element " + std::to_string(i) + " is not covered by any block");
    }
  }
}

PartitionMatroid PartitionMatroid::uniform(std::size_t ground_size, std::size_t k) {
  std::vector<Index> all(ground_size);
  std::iota(all.begin(), all.end(), Index{0});
  return PartitionMatroid(ground_size, {std::move(all)}, {k});
}

PartitionMatroid PartitionMatroid::equal_blocks(std::size_t ground_size, std::size_t m, std::size_t k) {
  if (m == 0 || m > ground_size) throw InputError("block count must lie in [1, N]");
  std::vector<std::vector<Index>> blocks(m);
  const std::size_t base = ground_size / m;
  const std::size_t extra = ground_size % m;
  Index next = 0;
  for (std::size_t l = 0; l < m; ++l) {
    const std::size_t size = base + (l < extra ? 1 : 0);
    for (std::size_t s = 0; s < size; ++s) blocks[l].push_back(next++);
  }
  return PartitionMatroid(ground_size, std::move(blocks), std::vector<std::size_t>(m, k));
}

std::size_t PartitionMatroid::rank() const noexcept {
  return std::accumulate(capacities_.begin(), capacities_.end(), std::size_t{0});
}

bool PartitionMatroid::is_independent(std::span<const std::uint8_t> x) const {
  if (x.size() != ground_size_) throw InputError("vector length does not match ground size");
  std::vector<std::size_t> used(blocks_.size(), 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 1) throw InputError("vector is not binary");
    if (x[i] != 0 && ++used[block_of_[i]] > capacities_[block_of_[i]]) return false;
  }
  return true;
}

bool PartitionMatroid::in_polytope(std::span<const double> y, double tol) const {
  if (y.size() != ground_size_) return false;
  std::vector<double> sums(blocks_.size(), 0.0);
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!(y[i] >= -tol && y[i] <= 1.0 + tol)) return false;
    sums[block_of_[i]] += y[i];
  }
  for (std::size_t l = 0; l < blocks_.size(); ++l) {
    if (sums[l] > static_cast<double>(capacities_[l]) + tol) return false;
  }
  return true;
}

BinaryVector PartitionMatroid::lp_maximize(std::span<const double> w) const {
  if (w.size() != ground_size_) throw InputError("weight length does not match ground size");
  BinaryVector m(ground_size_, 0);
  std::vector<Index> order;
  for (std::size_t l = 0; l < blocks_.size(); ++l) {
    if (capacities_[l] == 0) continue;
    order.clear();
    for (Index i : blocks_[l]) {
      if (w[i] > 0.0) order.push_back(i);
    }
    const std::size_t take = std::min(capacities_[l], order.size());
    // Ties go to the lower index.
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(take), order.end(),
                      [&](Index a, Index b) { return w[a] > w[b] || (w[a] == w[b] && a < b); });
    for (std::size_t s = 0; s < take; ++s) m[order[s]] = 1;
  }
  return m;
}

BinaryVector PartitionMatroid::pad_to_base(std::span<const std::uint8_t> x) const {
  if (!is_independent(x)) throw InputError("cannot pad a dependent set");
  BinaryVector out(x.begin(), x.end());
  for (std::size_t l = 0; l < blocks_.size(); ++l) {
    std::size_t used = 0;
    for (Index i : blocks_[l]) used += out[i];
    for (Index i : blocks_[l]) {
      if (used >= capacities_[l]) break;
      if (out[i] == 0) {
        out[i] = 1;
        ++used;
      }
    }
  }
  return out;
}

double PartitionMatroid::base_count() const {
  double total = 1.0;
  for (std::size_t l = 0; l < blocks_.size(); ++l) {
    const std::size_t n = blocks_[l].size();
    const std::size_t k = capacities_[l];
    double c = 1.0;
    for (std::size_t s = 1; s <= k; ++s) c = c * static_cast<double>(n - k + s) / static_cast<double>(s);
    total *= std::round(c);
  }
  return total;
}

void PartitionMatroid::for_each_base(const std::function<void(const BinaryVector&)>& visit,
                                     double max_bases) const {
  if (base_count() > max_bases) {
    throw GuardError("matroid has " + std::to_string(base_count()) + " bases, above the guard of " +
                     std::to_string(max_bases));
  }
  BinaryVector x(ground_size_, 0);
  // Depth-first over blocks, choosing k_l-subsets of each in lexicographic order.
  std::function<void(std::size_t, std::size_t, std::size_t)> rec = [&](std::size_t l, std::size_t start,
                                                                       std::size_t remaining) {
    if (l == blocks_.size()) {
      visit(x);
      return;
    }
    if (remaining == 0) {
      const std::size_t next = l + 1;
      rec(next, 0, next < blocks_.size() ? capacities_[next] : 0);
      return;
    }
    const auto& b = blocks_[l];
    for (std::size_t s = start; s + remaining <= b.size(); ++s) {
      x[b[s]] = 1;
      rec(l, s + 1, remaining - 1);
      x[b[s]] = 0;
    }
  };
  rec(0, 0, blocks_.empty() ? 0 : capacities_[0]);
}

std::vector<BinaryVector> PartitionMatroid::enumerate_bases(double max_bases) const {
  std::vector<BinaryVector> out;
  for_each_base([&](const BinaryVector& b) { out.push_back(b); }, max_bases);
  return out;
}

}  // namespace polysub
