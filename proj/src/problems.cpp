#include "polysub/problems.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "polysub/error.hpp"

namespace polysub {

namespace {

double uniform01(std::mt19937_64& engine) { return static_cast<double>(engine() >> 11) * 0x1p-53; }

std::size_t uniform_index(std::mt19937_64& engine, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine);
}

void check_partition(std::size_t n, const std::vector<std::vector<Index>>& blocks, const char* what) {
  std::vector<std::uint8_t> seen(n, 0);
  for (const auto& b : blocks) {
    for (Index i : b) {
      if (i >= n) throw InputError(std::string(what) + ": index out of range");
      if (seen[i]) throw InputError(std::string(what) + ": blocks overlap");
      seen[i] = 1;
    }
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
    throw InputError(std::string(what) + ": blocks do not cover the ground set");
  }
}

std::vector<std::vector<Index>> contiguous_blocks(std::size_t n, std::size_t m) {
  std::vector<std::vector<Index>> blocks(m);
  std::size_t next = 0;
  for (std::size_t b = 0; b < m; ++b) {
    const std::size_t len = n / m + (b < n % m ? 1 : 0);
    for (std::size_t t = 0; t < len; ++t) blocks[b].push_back(static_cast<Index>(next++));
  }
  return blocks;
}

}  // namespace

// --- SM ---------------------------------------------------------------------

Instance build_sm(const SummarizationSpec& spec, const AnalyticKernel& kernel) {
  const std::size_t n = spec.rewards.size();
  if (n == 0) throw InputError("summarization needs a non-empty ground set");
  double total = 0.0;
  for (double r : spec.rewards) {
    if (!(r >= 0.0)) throw InputError("rewards must be non-negative");
    total += r;
  }
  if (std::abs(total - 1.0) > 1e-9) throw InputError("rewards sum to " + std::to_string(total) + ", not 1");
  check_partition(n, spec.similarity, "similarity blocks");
  if (spec.matroid.ground_size() != n) throw InputError("matroid ground size differs from the reward vector");

  std::vector<ObjectiveTerm> terms;
  terms.reserve(spec.similarity.size());
  for (const auto& block : spec.similarity) {
    MultilinearPoly g(n);
    for (Index i : block) {
      if (spec.rewards[i] != 0.0) g.add_term({positive_literal(i)}, spec.rewards[i]);
    }
    terms.push_back(ObjectiveTerm{1.0, kernel, std::move(g)});
  }
  return Instance{"sm", CompositeObjective(n, std::move(terms), 0.0, ProblemKind::Summarization), spec.matroid};
}

// --- IM ---------------------------------------------------------------------

CascadeSet simulate_ic(std::size_t nodes, const std::vector<DirectedEdge>& edges, double p, std::size_t cascades,
                       std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("edge probability must lie in [0, 1]");
  for (const auto& e : edges) {
    if (e.from >= nodes || e.to >= nodes) throw InputError("edge endpoint out of range");
  }
  CascadeSet set;
  set.nodes = nodes;
  set.reach.resize(cascades);
  std::vector<std::vector<Index>> incoming(nodes);
  std::vector<std::uint32_t> mark(nodes, 0);
  std::vector<Index> stack;
  std::uint32_t stamp = 0;

  for (std::size_t j = 0; j < cascades; ++j) {
    std::mt19937_64 engine(derive_seed(seed, j));
    for (auto& in : incoming) in.clear();
    for (const auto& e : edges) {
      if (uniform01(engine) < p) incoming[e.to].push_back(e.from);
    }
    auto& fam = set.reach[j];
    fam.resize(nodes);
    for (Index v = 0; v < nodes; ++v) {
      ++stamp;
      stack.assign(1, v);
      mark[v] = stamp;
      auto& out = fam[v];
      while (!stack.empty()) {
        const Index u = stack.back();
        stack.pop_back();
        out.push_back(u);
        for (Index w : incoming[u]) {
          if (mark[w] != stamp) {
            mark[w] = stamp;
            stack.push_back(w);
          }
        }
      }
      std::sort(out.begin(), out.end());
    }
  }
  return set;
}

CompositeObjective build_im(const CascadeSet& cascades, const AnalyticKernel& kernel) {
  const std::size_t n = cascades.nodes;
  const std::size_t m = cascades.cascades();
  if (n == 0 || m == 0) throw InputError("influence objective needs nodes and cascades");
  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<ObjectiveTerm> terms;
  terms.reserve(m);
  for (const auto& fam : cascades.reach) {
    if (fam.size() != n) throw InputError("cascade family has the wrong node count");
    // 1 - (1/N) sum_v prod_{i in P_v} (1 - x_i)
    MultilinearPoly g = MultilinearPoly::constant(n, 1.0);
    for (Index v = 0; v < n; ++v) {
      const auto& pv = fam[v];
      if (std::find(pv.begin(), pv.end(), v) == pv.end()) throw InputError("reach set misses its own node");
      MonomialKey key;
      key.reserve(pv.size());
      for (Index i : pv) key.push_back(complement_literal(i));
      g.add_term(std::move(key), -inv_n);
    }
    terms.push_back(ObjectiveTerm{1.0 / static_cast<double>(m), kernel, std::move(g)});
  }
  return CompositeObjective(n, std::move(terms), 0.0, ProblemKind::Influence);
}

// --- FL ---------------------------------------------------------------------

std::vector<Index> FacilitySpec::descending_order(std::size_t customer) const {
  std::vector<Index> order;
  for (Index i = 0; i < facilities; ++i) {
    if (weight(i, customer) > 0.0) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return weight(a, customer) > weight(b, customer); });
  return order;
}

CompositeObjective build_fl(const FacilitySpec& spec, const AnalyticKernel& kernel) {
  const std::size_t n = spec.facilities;
  const std::size_t m = spec.customers;
  if (n == 0 || m == 0) throw InputError("facility location needs facilities and customers");
  if (spec.weights.size() != n * m) throw InputError("weight matrix has the wrong size");
  for (double w : spec.weights) {
    if (!(w >= 0.0 && w <= 1.0)) throw InputError("facility weights must lie in [0, 1]");
  }
  std::vector<ObjectiveTerm> terms;
  terms.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    const auto order = spec.descending_order(j);
    // w_1 - sum_l (w_l - w_{l+1}) prod_{k<=l} (1 - x_{i_k})
    MultilinearPoly g(n);
    if (!order.empty()) {
      g.add_term({}, spec.weight(order[0], j));
      MonomialKey prefix;
      for (std::size_t l = 0; l < order.size(); ++l) {
        prefix.push_back(complement_literal(order[l]));
        const double next = l + 1 < order.size() ? spec.weight(order[l + 1], j) : 0.0;
        const double diff = spec.weight(order[l], j) - next;
        if (diff != 0.0) g.add_term(prefix, -diff);
      }
    }
    terms.push_back(ObjectiveTerm{1.0 / static_cast<double>(m), kernel, std::move(g)});
  }
  return CompositeObjective(n, std::move(terms), 0.0, ProblemKind::FacilityLocation);
}

// --- CN ---------------------------------------------------------------------

namespace {

struct CnLayout {
  // Per edge: (rate, literal key) pairs, i.e. lambda / mu * prod (1 - x).
  std::vector<std::vector<std::pair<double, MonomialKey>>> loads;
};

CnLayout layout_cn(const CacheNetworkSpec& spec) {
  if (spec.nodes == 0 || spec.catalog == 0) throw InputError("cache network needs nodes and a catalog");
  if (spec.capacities.size() != spec.nodes) throw InputError("one cache capacity per node expected");
  std::map<std::pair<Index, Index>, std::size_t> edge_id;
  for (std::size_t e = 0; e < spec.edges.size(); ++e) {
    const auto& ed = spec.edges[e];
    if (ed.from >= spec.nodes || ed.to >= spec.nodes) throw InputError("edge endpoint out of range");
    if (!(ed.service_rate > 0.0)) throw InputError("service rates must be positive");
    if (!edge_id.emplace(std::make_pair(ed.from, ed.to), e).second) throw InputError("duplicate edge");
  }
  CnLayout lay;
  lay.loads.resize(spec.edges.size());
  for (const auto& r : spec.requests) {
    if (r.item >= spec.catalog) throw InputError("request item out of range");
    if (!(r.rate >= 0.0)) throw InputError("arrival rates must be non-negative");
    if (r.path.size() < 2) throw InputError("request path needs at least two nodes");
    std::set<Index> seen;
    for (Index v : r.path) {
      if (v >= spec.nodes) throw InputError("path node out of range");
      if (!seen.insert(v).second) throw InputError("request path is not simple");
    }
    MonomialKey prefix;
    for (std::size_t k = 0; k + 1 < r.path.size(); ++k) {
      prefix.push_back(complement_literal(spec.var(r.path[k], r.item)));
      // Responses return over the reverse hop.
      const auto it = edge_id.find({r.path[k + 1], r.path[k]});
      if (it == edge_id.end()) {
        throw InputError("no edge " + std::to_string(r.path[k + 1]) + "->" + std::to_string(r.path[k]) +
                         " for the response of a request hop");
      }
      const double mu = spec.edges[it->second].service_rate;
      lay.loads[it->second].emplace_back(r.rate / mu, prefix);
    }
  }
  return lay;
}

}  // namespace

std::vector<double> edge_loads(const CacheNetworkSpec& spec, std::span<const double> x) {
  const auto lay = layout_cn(spec);
  if (x.size() != spec.nodes * spec.catalog) throw InputError("placement vector has the wrong length");
  std::vector<double> out(spec.edges.size(), 0.0);
  for (std::size_t e = 0; e < lay.loads.size(); ++e) {
    for (const auto& [rate, key] : lay.loads[e]) {
      double prod = rate;
      for (LiteralCode c : key) prod *= 1.0 - x[literal_var(c)];
      out[e] += prod;
    }
  }
  return out;
}

Instance build_cn(const CacheNetworkSpec& spec) {
  const auto lay = layout_cn(spec);
  const std::size_t n = spec.nodes * spec.catalog;
  double s_bar = 0.0;
  std::vector<double> empty_load(lay.loads.size(), 0.0);
  for (std::size_t e = 0; e < lay.loads.size(); ++e) {
    for (const auto& term : lay.loads[e]) empty_load[e] += term.first;
    s_bar = std::max(s_bar, empty_load[e]);
  }
  if (s_bar >= 1.0) {
    throw StabilityError("largest edge load without caching is " + std::to_string(s_bar) + " >= 1");
  }
  const auto kernel = AnalyticKernel::queue_delay(s_bar);

  std::vector<ObjectiveTerm> terms;
  double offset = 0.0;
  for (std::size_t e = 0; e < lay.loads.size(); ++e) {
    if (lay.loads[e].empty()) continue;
    MultilinearPoly g(n);
    for (const auto& [rate, key] : lay.loads[e]) g.add_term(key, rate);
    offset += eval_kernel(kernel, empty_load[e]);
    terms.push_back(ObjectiveTerm{-1.0, kernel, std::move(g)});
  }

  std::vector<std::vector<Index>> blocks(spec.nodes);
  for (Index v = 0; v < spec.nodes; ++v) {
    for (Index i = 0; i < spec.catalog; ++i) blocks[v].push_back(spec.var(v, i));
  }
  PartitionMatroid mat(n, std::move(blocks), spec.capacities);
  return Instance{"cn", CompositeObjective(n, std::move(terms), offset, ProblemKind::CacheNetwork), std::move(mat)};
}

// --- generators -------------------------------------------------------------

Instance gen_sm_synth(std::uint64_t seed, const SmSynthParams& params) {
  if (params.ground == 0 || params.similarity_blocks == 0 || params.similarity_blocks > params.ground) {
    throw InputError("bad summarization generator parameters");
  }
  std::mt19937_64 engine(seed);
  SummarizationSpec spec;
  spec.rewards.resize(params.ground);
  double total = 0.0;
  for (auto& r : spec.rewards) {
    r = uniform01(engine);
    total += r;
  }
  for (auto& r : spec.rewards) r /= total;
  spec.similarity = contiguous_blocks(params.ground, params.similarity_blocks);
  spec.matroid = PartitionMatroid::equal_blocks(params.ground, params.partitions, params.capacity);
  auto inst = build_sm(spec);
  inst.name = "smsynth";
  return inst;
}

std::vector<DirectedEdge> gen_bipartite_edges(std::uint64_t seed, const ImSynthParams& params) {
  const std::size_t n1 = params.left;
  const std::size_t n2 = params.right;
  if (n1 == 0 || n2 == 0) throw InputError("bipartite sides must be non-empty");
  if (params.edges > n1 * n2) throw InputError("more edges requested than node pairs");
  std::mt19937_64 engine(seed);
  std::set<std::pair<Index, Index>> used;
  std::vector<DirectedEdge> edges;
  edges.reserve(params.edges);

  // Preferential attachment on the source side: P(u) ~ out_deg(u) + a gives
  // a degree tail exponent of 2 + a / mean_degree.
  const double mean_degree = static_cast<double>(params.edges) / static_cast<double>(n1);
  const double attract = params.degree == ImSynthParams::Degree::PowerLaw
                             ? std::max(params.exponent - 2.0, 1e-3) * mean_degree
                             : 0.0;
  std::vector<double> out_deg(n1, 0.0);

  while (edges.size() < params.edges) {
    Index u;
    if (params.degree == ImSynthParams::Degree::Uniform) {
      u = static_cast<Index>(uniform_index(engine, n1));
    } else {
      const double total = static_cast<double>(edges.size()) + attract * static_cast<double>(n1);
      double pick = uniform01(engine) * total;
      u = static_cast<Index>(n1 - 1);
      for (std::size_t c = 0; c < n1; ++c) {
        pick -= out_deg[c] + attract;
        if (pick < 0.0) {
          u = static_cast<Index>(c);
          break;
        }
      }
    }
    const auto v = static_cast<Index>(n1 + uniform_index(engine, n2));
    if (!used.emplace(u, v).second) continue;
    // A saturated source would loop forever under strong attachment.
    if (out_deg[u] + 1 > static_cast<double>(n2)) continue;
    out_deg[u] += 1.0;
    edges.push_back(DirectedEdge{u, v});
  }
  return edges;
}

Instance gen_im_synth(std::uint64_t seed, const ImSynthParams& params) {
  const auto edges = gen_bipartite_edges(seed, params);
  const std::size_t n = params.left + params.right;
  const auto cascades = simulate_ic(n, edges, params.edge_probability, params.cascades, derive_seed(seed, 0x1c));

  // Seeds come from V1 only: V2 forms one frozen block.
  auto blocks = contiguous_blocks(params.left, params.partitions);
  std::vector<std::size_t> caps(blocks.size(), params.capacity);
  std::vector<Index> right(params.right);
  std::iota(right.begin(), right.end(), static_cast<Index>(params.left));
  blocks.push_back(std::move(right));
  caps.push_back(0);

  Instance inst{params.degree == ImSynthParams::Degree::Uniform ? "imsynth1" : "imsynth2", build_im(cascades),
                PartitionMatroid(n, std::move(blocks), std::move(caps))};
  return inst;
}

Instance gen_fl_synth(std::uint64_t seed, const FlSynthParams& params) {
  const std::size_t n = params.facilities;
  const std::size_t m = params.customers;
  if (n == 0 || m == 0) throw InputError("facility generator needs facilities and customers");
  if (params.edges > n * m) throw InputError("more edges requested than facility/customer pairs");
  std::mt19937_64 engine(seed);
  FacilitySpec spec{n, m, std::vector<double>(n * m, 0.0)};
  std::set<std::pair<std::size_t, std::size_t>> used;
  while (used.size() < params.edges) {
    const std::size_t i = uniform_index(engine, n);
    const std::size_t j = uniform_index(engine, m);
    if (!used.emplace(i, j).second) continue;
    spec.weights[i * m + j] = 0.2 * static_cast<double>(uniform_index(engine, 6));
  }
  Instance inst{"flsynth1", build_fl(spec), PartitionMatroid::equal_blocks(n, params.partitions, params.capacity)};
  return inst;
}

Instance gen_im_random(std::uint64_t seed, const ImRandomParams& params) {
  const std::size_t n = params.nodes;
  if (n < 2) throw InputError("random influence instance needs at least two nodes");
  if (params.edges > n * (n - 1)) throw InputError("more edges requested than ordered node pairs");
  std::mt19937_64 engine(seed);
  std::set<std::pair<Index, Index>> used;
  std::vector<DirectedEdge> edges;
  while (edges.size() < params.edges) {
    const auto u = static_cast<Index>(uniform_index(engine, n));
    const auto v = static_cast<Index>(uniform_index(engine, n));
    if (u == v || !used.emplace(u, v).second) continue;
    edges.push_back(DirectedEdge{u, v});
  }
  const auto cascades = simulate_ic(n, edges, params.edge_probability, params.cascades, derive_seed(seed, 0x1c));
  return Instance{"imrandom", build_im(cascades),
                  PartitionMatroid::equal_blocks(n, params.partitions, params.capacity)};
}

}  // namespace polysub
