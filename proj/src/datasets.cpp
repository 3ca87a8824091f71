#include "polysub/datasets.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string_view>
#include <unordered_map>

#include "polysub/error.hpp"

namespace polysub {

namespace {

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return in;
}

template <class T>
T parse_number(std::string_view s, std::size_t line_no, const char* what) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  T v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParseError(std::string("bad ") + what + " `" + std::string(s) + "`", line_no);
  }
  return v;
}

std::vector<std::string_view> split_colons(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find("::", start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 2;
  }
}

}  // namespace

EdgeList read_snap_edges(std::istream& in) {
  EdgeList g;
  std::unordered_map<std::int64_t, Index> dense;
  auto id_of = [&](std::int64_t label) {
    auto [it, fresh] = dense.try_emplace(label, static_cast<Index>(g.labels.size()));
    if (fresh) g.labels.push_back(label);
    return it->second;
  };
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view v(line);
    while (!v.empty() && (v.front() == ' ' || v.front() == '\t')) v.remove_prefix(1);
    if (v.empty() || v.front() == '#' || v == "\r") continue;
    std::istringstream ss{std::string(v)};
    std::string a, b, extra;
    if (!(ss >> a >> b)) throw ParseError("expected `from to`", line_no);
    const auto from = parse_number<std::int64_t>(a, line_no, "node id");
    const auto to = parse_number<std::int64_t>(b, line_no, "node id");
    g.edges.push_back(DirectedEdge{id_of(from), id_of(to)});
  }
  g.nodes = g.labels.size();
  return g;
}

EdgeList load_snap_edges(const std::string& path) {
  auto in = open_or_throw(path);
  return read_snap_edges(in);
}

EdgeList top_out_degree_subgraph(const EdgeList& graph, std::size_t n) {
  // distinct out-neighbours; self-loops do not count
  std::set<std::pair<Index, Index>> arcs;
  for (const auto& e : graph.edges) {
    if (e.from != e.to) arcs.emplace(e.from, e.to);
  }
  std::vector<std::size_t> deg(graph.nodes, 0);
  for (const auto& [from, to] : arcs) ++deg[from];
  std::vector<Index> order(graph.nodes);
  for (Index i = 0; i < graph.nodes; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](Index a, Index b) {
    if (deg[a] != deg[b]) return deg[a] > deg[b];
    return graph.labels[a] < graph.labels[b];
  });
  order.resize(std::min(n, order.size()));

  constexpr Index kDropped = ~Index{0};
  std::vector<Index> rank(graph.nodes, kDropped);
  EdgeList sub;
  sub.nodes = order.size();
  for (Index r = 0; r < order.size(); ++r) {
    rank[order[r]] = r;
    sub.labels.push_back(graph.labels[order[r]]);
  }
  std::set<std::pair<Index, Index>> seen;
  for (const auto& e : graph.edges) {
    const Index u = rank[e.from];
    const Index v = rank[e.to];
    if (u == kDropped || v == kDropped || u == v) continue;
    if (seen.emplace(u, v).second) sub.edges.push_back(DirectedEdge{u, v});
  }
  return sub;
}

std::vector<Rating> read_movielens_ratings(std::istream& in) {
  std::vector<Rating> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split_colons(line);
    if (cells.size() != 4) throw ParseError("expected user::movie::rating::timestamp", line_no);
    Rating r;
    r.user = parse_number<std::int64_t>(cells[0], line_no, "user id");
    r.movie = parse_number<std::int64_t>(cells[1], line_no, "movie id");
    r.rating = parse_number<double>(cells[2], line_no, "rating");
    parse_number<std::int64_t>(cells[3], line_no, "timestamp");
    out.push_back(r);
  }
  return out;
}

std::vector<Rating> load_movielens_ratings(const std::string& path) {
  auto in = open_or_throw(path);
  return read_movielens_ratings(in);
}

std::map<std::int64_t, std::string> read_movielens_movies(std::istream& in) {
  std::map<std::int64_t, std::string> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    // Titles may hold single colons, so take the id and the last field.
    const auto first = line.find("::");
    const auto last = line.rfind("::");
    if (first == std::string::npos || first == last) throw ParseError("expected movie::title::genres", line_no);
    const auto id = parse_number<std::int64_t>(std::string_view(line).substr(0, first), line_no, "movie id");
    std::string genres = line.substr(last + 2);
    const auto bar = genres.find('|');
    if (bar != std::string::npos) genres.resize(bar);
    if (genres.empty()) throw ParseError("movie has no genre", line_no);
    out[id] = genres;
  }
  return out;
}

std::map<std::int64_t, std::string> load_movielens_movies(const std::string& path) {
  auto in = open_or_throw(path);
  return read_movielens_movies(in);
}

Instance build_epinions(const EdgeList& graph, std::uint64_t seed, const EpinionsParams& params) {
  const auto sub = top_out_degree_subgraph(graph, params.nodes);
  if (sub.nodes == 0) throw InputError("empty graph");
  const auto cascades = simulate_ic(sub.nodes, sub.edges, params.edge_probability, params.cascades, seed);
  return Instance{"epinions", build_im(cascades),
                  PartitionMatroid::equal_blocks(sub.nodes, params.partitions, params.capacity)};
}

Instance build_movielens(const std::vector<Rating>& ratings, const std::map<std::int64_t, std::string>& genres,
                         std::uint64_t seed, const MovieLensParams& params) {
  if (ratings.empty()) throw InputError("no ratings");
  if (!(params.max_rating > 0.0)) throw InputError("max rating must be positive");

  std::map<std::int64_t, std::size_t> count;
  for (const auto& r : ratings) ++count[r.user];
  std::vector<std::pair<std::int64_t, std::size_t>> users(count.begin(), count.end());
  std::stable_sort(users.begin(), users.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  users.resize(std::min(params.users, users.size()));
  std::map<std::int64_t, std::size_t> user_col;
  for (std::size_t j = 0; j < users.size(); ++j) user_col[users[j].first] = j;

  // Movie pool: everything the most active user rated, in id order.
  std::set<std::int64_t> pool_set;
  for (const auto& r : ratings) {
    if (r.user == users[0].first) pool_set.insert(r.movie);
  }
  std::vector<std::int64_t> pool(pool_set.begin(), pool_set.end());
  std::mt19937_64 engine(seed);
  std::shuffle(pool.begin(), pool.end(), engine);
  pool.resize(std::min(params.movies, pool.size()));
  std::sort(pool.begin(), pool.end());
  std::map<std::int64_t, Index> movie_row;
  for (Index i = 0; i < pool.size(); ++i) movie_row[pool[i]] = i;

  FacilitySpec spec{pool.size(), users.size(), std::vector<double>(pool.size() * users.size(), 0.0)};
  for (const auto& r : ratings) {
    const auto mi = movie_row.find(r.movie);
    const auto uj = user_col.find(r.user);
    if (mi == movie_row.end() || uj == user_col.end()) continue;
    const double w = r.rating / params.max_rating;
    if (!(w >= 0.0 && w <= 1.0)) throw InputError("rating outside [0, max_rating]");
    spec.weights[mi->second * spec.customers + uj->second] = w;
  }

  std::map<std::string, std::vector<Index>> by_genre;
  for (Index i = 0; i < pool.size(); ++i) {
    const auto g = genres.find(pool[i]);
    by_genre[g == genres.end() ? std::string("(unknown)") : g->second].push_back(i);
  }
  std::vector<std::vector<Index>> blocks;
  for (auto& [name, members] : by_genre) blocks.push_back(std::move(members));
  std::vector<std::size_t> caps(blocks.size(), params.capacity);
  return Instance{"movielens", build_fl(spec), PartitionMatroid(pool.size(), std::move(blocks), std::move(caps))};
}

}  // namespace polysub
