#pragma once

// Loaders for SNAP edge lists and the MovieLens 1M layout, and the subset
// rules that turn them into experiment instances.

#include <cstdint>
#include <istream>
#include <map>
#include <string>
#include <vector>

#include "polysub/problems.hpp"

namespace polysub {

struct EdgeList {
  std::size_t nodes = 0;
  std::vector<std::int64_t> labels;  // original id of each dense node
  std::vector<DirectedEdge> edges;
};

// Whitespace-separated `from to` pairs; `#` lines and blank lines are
// skipped. Node ids are renumbered densely in order of first appearance.
EdgeList read_snap_edges(std::istream& in);
EdgeList load_snap_edges(const std::string& path);

// Subgraph induced by the n nodes of largest out-degree (ties to the
// smaller original id), relabelled 0..n-1 by rank.
EdgeList top_out_degree_subgraph(const EdgeList& graph, std::size_t n);

struct Rating {
  std::int64_t user = 0;
  std::int64_t movie = 0;
  double rating = 0.0;
};

// `user::movie::rating::timestamp` rows.
std::vector<Rating> read_movielens_ratings(std::istream& in);
std::vector<Rating> load_movielens_ratings(const std::string& path);

// `movie::title::Genre1|Genre2` rows -> movie id to first genre.
std::map<std::int64_t, std::string> read_movielens_movies(std::istream& in);
std::map<std::int64_t, std::string> load_movielens_movies(const std::string& path);

struct EpinionsParams {
  std::size_t nodes = 100;
  std::size_t cascades = 10;
  double edge_probability = 0.02;
  std::size_t partitions = 2;
  std::size_t capacity = 2;
};

// IM over the top-out-degree subgraph; nodes split into contiguous blocks.
Instance build_epinions(const EdgeList& graph, std::uint64_t seed, const EpinionsParams& params = {});

struct MovieLensParams {
  std::size_t users = 100;
  std::size_t movies = 100;
  std::size_t capacity = 4;
  double max_rating = 5.0;
};

// Facilities are movies, customers are the most active users. The movie
// pool is the movies rated by the single most active user; `movies` of them
// are drawn by seed. Blocks group movies by first genre.
Instance build_movielens(const std::vector<Rating>& ratings, const std::map<std::int64_t, std::string>& genres,
                         std::uint64_t seed, const MovieLensParams& params = {});

}  // namespace polysub
