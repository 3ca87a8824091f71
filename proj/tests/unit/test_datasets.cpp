#include <doctest.h>

#include <sstream>

#include "polysub/datasets.hpp"
#include "polysub/error.hpp"

using namespace polysub;

TEST_CASE("SNAP edge lists") {
  std::istringstream in("# Directed graph\n# FromNodeId\tToNodeId\n\n10\t20\n20 30\n10 30\n");
  const auto g = read_snap_edges(in);
  CHECK(g.nodes == 3);
  CHECK(g.labels == std::vector<std::int64_t>{10, 20, 30});
  CHECK(g.edges == std::vector<DirectedEdge>{{0, 1}, {1, 2}, {0, 2}});

  std::istringstream bad("1 2\n3\n");
  try {
    (void)read_snap_edges(bad);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(load_snap_edges("/nonexistent/edges.txt"), InputError);
}

TEST_CASE("top out-degree subgraph") {
  // out-degrees: a=2, b=1, c=0
  std::istringstream in("1 2\n1 3\n2 3\n");
  const auto g = read_snap_edges(in);
  const auto sub = top_out_degree_subgraph(g, 2);
  CHECK(sub.nodes == 2);
  CHECK(sub.labels == std::vector<std::int64_t>{1, 2});
  CHECK(sub.edges == std::vector<DirectedEdge>{{0, 1}});

  // equal degree once the self-loop and the repeat are ignored
  std::istringstream ties("5 1\n3 1\n1 5\n5 5\n5 1\n");
  const auto t = top_out_degree_subgraph(read_snap_edges(ties), 2);
  CHECK(t.labels == std::vector<std::int64_t>{1, 3});
}

TEST_CASE("MovieLens rows") {
  std::istringstream in("1::1193::5::978300760\n1::661::3::978302109\n2::1193::4::978298413\n");
  const auto r = read_movielens_ratings(in);
  REQUIRE(r.size() == 3);
  CHECK(r[0].user == 1);
  CHECK(r[0].movie == 1193);
  CHECK(r[0].rating == 5.0);
  CHECK(r[2].rating == 4.0);

  std::istringstream bad("1::1193::5::978300760\n1::661\n");
  try {
    (void)read_movielens_ratings(bad);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }

  std::istringstream movies("1193::One Flew Over the Cuckoo's Nest (1975)::Drama\n661::James and the Giant Peach (1996)::Animation|Children's|Musical\n");
  const auto m = read_movielens_movies(movies);
  CHECK(m.at(1193) == "Drama");
  CHECK(m.at(661) == "Animation");
}

TEST_CASE("MovieLens instance") {
  std::vector<Rating> ratings;
  // user 1 rates movies 1..6; users 2 and 3 rate a few of them
  for (std::int64_t mv = 1; mv <= 6; ++mv) ratings.push_back({1, mv, static_cast<double>(mv % 5 + 1)});
  ratings.push_back({2, 1, 5.0});
  ratings.push_back({2, 2, 2.0});
  ratings.push_back({3, 6, 4.0});
  ratings.push_back({3, 99, 1.0});
  const std::map<std::int64_t, std::string> genres{{1, "Drama"}, {2, "Drama"},  {3, "Comedy"},
                                                   {4, "Comedy"}, {5, "Action"}, {6, "Drama"}};
  MovieLensParams p;
  p.users = 3;
  p.movies = 4;
  p.capacity = 1;
  const auto inst = build_movielens(ratings, genres, 5, p);
  CHECK(inst.objective.ground_size() == 4);
  CHECK(inst.objective.kind() == ProblemKind::FacilityLocation);
  const auto again = build_movielens(ratings, genres, 5, p);
  CHECK(inst.matroid.blocks() == again.matroid.blocks());
  std::size_t covered = 0;
  for (const auto& b : inst.matroid.blocks()) covered += b.size();
  CHECK(covered == 4);
}

TEST_CASE("Epinions instance") {
  std::ostringstream text;
  for (int u = 0; u < 12; ++u) {
    for (int v = 0; v < 12; ++v) {
      if (u != v && (u * 7 + v) % 3 == 0) text << u << ' ' << v << '\n';
    }
  }
  std::istringstream in(text.str());
  EpinionsParams p;
  p.nodes = 8;
  p.cascades = 3;
  p.edge_probability = 0.5;
  const auto inst = build_epinions(read_snap_edges(in), 4, p);
  CHECK(inst.objective.ground_size() == 8);
  CHECK(inst.objective.term_count() == 3);
  CHECK(inst.matroid.rank() == 4);
}
