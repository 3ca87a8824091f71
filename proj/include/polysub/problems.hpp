#pragma once

// Instance builders for summarization (SM), influence maximization (IM),
// facility location (FL) and Kelly cache networks (CN), plus the seeded
// synthetic generators used by the experiments.

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "polysub/analytic.hpp"
#include "polysub/matroid.hpp"
#include "polysub/objective.hpp"

namespace polysub {

struct Instance {
  std::string name;
  CompositeObjective objective;
  PartitionMatroid matroid;
};

struct DirectedEdge {
  Index from = 0;
  Index to = 0;
  friend bool operator==(const DirectedEdge&, const DirectedEdge&) = default;
};

// --- Summarization ---------------------------------------------------------

struct SummarizationSpec {
  std::vector<double> rewards;                 // non-negative, sums to 1
  std::vector<std::vector<Index>> similarity;  // blocks P_j partitioning the ground set
  PartitionMatroid matroid;
};

// f(x) = sum_j h(sum_{i in P_j} r_i x_i)
Instance build_sm(const SummarizationSpec& spec, const AnalyticKernel& kernel = AnalyticKernel::log1p());

// --- Influence maximization -----------------------------------------------

// reach[j][v] = P_v^j: the nodes whose selection as a seed influences v in
// cascade j (every node that reaches v over live edges, v included).
struct CascadeSet {
  std::size_t nodes = 0;
  std::vector<std::vector<std::vector<Index>>> reach;

  std::size_t cascades() const noexcept { return reach.size(); }
};

// Independent cascade: each edge is live with probability p, independently
// per cascade. Cascade j draws from derive_seed(seed, j).
CascadeSet simulate_ic(std::size_t nodes, const std::vector<DirectedEdge>& edges, double p, std::size_t cascades,
                       std::uint64_t seed);

// f(x) = (1/M) sum_j h(g_j(x)), g_j(x) = (1/N) sum_v (1 - prod_{i in P_v^j} (1 - x_i)).
CompositeObjective build_im(const CascadeSet& cascades, const AnalyticKernel& kernel = AnalyticKernel::log1p());

// --- Facility location ----------------------------------------------------

struct FacilitySpec {
  std::size_t facilities = 0;
  std::size_t customers = 0;
  // weights[i * customers + j] = w_{i,j} in [0, 1]
  std::vector<double> weights;

  double weight(std::size_t facility, std::size_t customer) const { return weights[facility * customers + customer]; }
  // Facilities with positive weight for the customer, by descending weight
  // (ties to the lower index).
  std::vector<Index> descending_order(std::size_t customer) const;
};

// f(x) = (1/M) sum_j h(g_j(x)) with g_j(x) = max_{i in supp(x)} w_{i,j}
// written as the telescoping sum over the descending order.
CompositeObjective build_fl(const FacilitySpec& spec, const AnalyticKernel& kernel = AnalyticKernel::log1p());

// --- Cache networks -------------------------------------------------------

struct CacheEdge {
  Index from = 0;  // responses travel from -> to
  Index to = 0;
  double service_rate = 1.0;
};

struct CacheRequest {
  Index item = 0;
  std::vector<Index> path;  // requester first, designated server last
  double rate = 0.0;
};

struct CacheNetworkSpec {
  std::size_t nodes = 0;
  std::size_t catalog = 0;
  std::vector<CacheEdge> edges;
  std::vector<CacheRequest> requests;
  std::vector<std::size_t> capacities;  // per node

  // Ground-set index of "node v caches item i".
  Index var(Index v, Index item) const { return static_cast<Index>(v * catalog + item); }
};

// Caching gain f(x) = sum_e h(g_e(0)) - sum_e h(g_e(x)) with h(s) = s/(1-s)
// and edge loads g_e. Encoded as offset sum_e h(g_e(0)) and weights -1.
// Throws StabilityError when the largest empty-cache load is >= 1.
Instance build_cn(const CacheNetworkSpec& spec);

// Edge loads at x (length nodes * catalog), in spec.edges order.
std::vector<double> edge_loads(const CacheNetworkSpec& spec, std::span<const double> x);

// --- Synthetic generators ---------------------------------------------------

struct SmSynthParams {
  std::size_t ground = 200;
  std::size_t similarity_blocks = 5;
  std::size_t partitions = 2;
  std::size_t capacity = 10;
};

struct ImSynthParams {
  enum class Degree { Uniform, PowerLaw };
  Degree degree = Degree::Uniform;
  std::size_t left = 100;   // seed side V1
  std::size_t right = 100;  // V2
  std::size_t edges = 400;
  std::size_t partitions = 10;
  std::size_t capacity = 3;
  double exponent = 2.5;      // power-law tail exponent
  double edge_probability = 1.0;
  std::size_t cascades = 1;
};

struct FlSynthParams {
  std::size_t facilities = 200;
  std::size_t customers = 200;
  std::size_t edges = 800;
  std::size_t partitions = 10;
  std::size_t capacity = 5;
};

// Random directed graph IM instance (small oracle-sized instances).
struct ImRandomParams {
  std::size_t nodes = 8;
  std::size_t edges = 12;
  double edge_probability = 0.5;
  std::size_t cascades = 2;
  std::size_t partitions = 2;
  std::size_t capacity = 2;
};

Instance gen_sm_synth(std::uint64_t seed, const SmSynthParams& params = {});
Instance gen_im_synth(std::uint64_t seed, const ImSynthParams& params = {});
Instance gen_fl_synth(std::uint64_t seed, const FlSynthParams& params = {});
Instance gen_im_random(std::uint64_t seed, const ImRandomParams& params = {});

// Bipartite V1 -> V2 edges; V1 occupies indices [0, left).
std::vector<DirectedEdge> gen_bipartite_edges(std::uint64_t seed, const ImSynthParams& params);

}  // namespace polysub
