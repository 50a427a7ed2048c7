#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "kpindex/error.hpp"
#include "kpindex/ranking.hpp"

using namespace kpindex;

namespace {

SemMultiGraph weighted(const std::vector<std::tuple<std::string, std::string, double>>& edges,
                       const std::vector<std::string>& isolated = {}) {
  SemMultiGraph g("t");
  for (const auto& k : isolated) g.add_node(k, {});
  for (const auto& [a, b, w] : edges) {
    g.add_node(a, {});
    g.add_node(b, {});
    g.add_weight(a, b, Layer::kDocument, w, {"t"});
  }
  return g;
}

double total(const ScoreMap& s) {
  double t = 0.0;
  for (const auto& [k, v] : s) t += v;
  return t;
}

RankParams unbounded() {
  RankParams p;
  p.top_n = 1000;
  return p;
}

}  // namespace

TEST_SUITE("ranking") {

TEST_CASE("pagerank: examples") {
  const RankParams p;
  const auto one = pagerank(weighted({}, {"solo"}), p);
  CHECK(one.at("solo") == doctest::Approx(1.0));

  const auto two = pagerank(weighted({{"a", "b", 3.0}}), p);
  CHECK(two.at("a") == doctest::Approx(0.5));
  CHECK(two.at("b") == doctest::Approx(0.5));

  const auto tri = pagerank(weighted({{"a", "b", 1.0}, {"b", "c", 1.0}, {"a", "c", 1.0}}), p);
  for (const auto& [k, v] : tri) CHECK(v == doctest::Approx(1.0 / 3.0));

  const auto path = pagerank(weighted({{"a", "b", 2.0}, {"b", "c", 1.0}}), p);
  CHECK(path.at("b") > path.at("a"));
  CHECK(path.at("a") > path.at("c"));
}

TEST_CASE("pagerank: empty graph") {
  CHECK_THROWS_WITH_AS(pagerank(SemMultiGraph("t"), RankParams{}), "empty graph",
                       std::invalid_argument);
}

TEST_CASE("pagerank: isolated nodes keep teleport mass") {
  const auto s = pagerank(weighted({{"a", "b", 1.0}}, {"z"}), RankParams{});
  CHECK(s.at("z") > 0.0);
  CHECK(s.at("a") > s.at("z"));
  CHECK(total(s) == doctest::Approx(1.0));
}

TEST_CASE("pagerank: both layers contribute") {
  SemMultiGraph g("t");
  for (const char* k : {"a", "b", "c"}) g.add_node(k, {});
  g.add_weight("a", "b", Layer::kDocument, 1.0, {"t"});
  g.add_weight("a", "b", Layer::kDomain, 2.0, {"n"});
  g.add_weight("a", "c", Layer::kDocument, 3.0, {"t"});
  const auto s = pagerank(g, RankParams{});
  CHECK(s.at("b") == doctest::Approx(s.at("c")).epsilon(1e-6));
}

TEST_CASE("pagerank: matches linear solve, sums to one, residuals shrink") {
  std::mt19937 rng(555);
  RankParams p;
  p.tol = 1e-12;
  p.max_iter = 1000;
  for (int trial = 0; trial < 150; ++trial) {
    const auto g = kpindex::testing::random_graph(rng, 12, 0.4, true);
    const auto result = pagerank_iterate(g, p);
    CHECK(result.converged);
    const auto oracle = kpindex::testing::pagerank_linear_solve(g, p.damping);
    for (const auto& [k, v] : result.scores) {
      CHECK(v >= 0.0);
      CHECK(std::abs(v - oracle.at(k)) <= 1e-9);
    }
    CHECK(std::abs(total(result.scores) - 1.0) <= 1e-12);
    for (std::size_t i = 1; i < result.residuals.size(); ++i) {
      CHECK(result.residuals[i] <= result.residuals[i - 1] + 1e-15);
    }
  }
}

TEST_CASE("pagerank: default tolerance stays within 1e-5 of the oracle") {
  std::mt19937 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = kpindex::testing::random_graph(rng, 8, 0.5, true);
    const auto s = pagerank(g, RankParams{});
    const auto oracle = kpindex::testing::pagerank_linear_solve(g, 0.85);
    for (const auto& [k, v] : s) CHECK(std::abs(v - oracle.at(k)) <= 1e-5);
    CHECK(std::abs(total(s) - 1.0) <= 1e-6);
  }
}

TEST_CASE("pagerank: invariant under uniform weight scaling") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = kpindex::testing::random_graph(rng, 10, 0.4, true);
    const auto base = pagerank(g, RankParams{});
    for (double c : {0.5, 3.0, 10.0}) {
      auto scaled = g;
      for (auto& [ek, e] : scaled.edges()) e.weight *= c;
      const auto s = pagerank(scaled, RankParams{});
      for (const auto& [k, v] : s) CHECK(std::abs(v - base.at(k)) <= 1e-9);
    }
  }
}

TEST_CASE("pagerank: max_iter caps the iteration") {
  RankParams p;
  p.max_iter = 1;
  p.tol = 0.0;
  const auto r = pagerank_iterate(weighted({{"a", "b", 1.0}, {"b", "c", 1.0}}), p);
  CHECK(r.residuals.size() == 1);
  CHECK_FALSE(r.converged);
}

TEST_CASE("rank_keyphrases: gamma_absent examples") {
  SemMultiGraph g("t");
  g.add_node("present", {Origin::kPresent, {"t"}, "Present"});
  g.add_node("absent", {Origin::kAbsent, {"n"}, "Absent"});
  const ScoreMap scores = {{"present", 0.10}, {"absent", 0.15}};

  RankParams p;
  const auto ranked = rank_keyphrases(g, scores, p);
  REQUIRE(ranked.size() == 2);
  CHECK(ranked[0].key == "absent");
  CHECK(ranked[0].score == doctest::Approx(0.12));
  CHECK(ranked[0].origin == Origin::kAbsent);
  CHECK(ranked[0].surface == "Absent");
  CHECK(ranked[0].sources == std::vector<std::string>{"n"});
  CHECK(ranked[1].key == "present");
  CHECK(ranked[1].score == 0.10);

  p.gamma_absent = 0.0;
  const auto none = rank_keyphrases(g, scores, p);
  REQUIRE(none.size() == 1);
  CHECK(none[0].key == "present");
}

TEST_CASE("rank_keyphrases: ties by key, truncation") {
  SemMultiGraph g("t");
  for (const char* k : {"d", "c", "b", "a"}) g.add_node(k, {});
  const ScoreMap scores = {{"a", 0.2}, {"b", 0.3}, {"c", 0.3}, {"d", 0.2}};
  RankParams p;
  p.top_n = 3;
  const auto ranked = rank_keyphrases(g, scores, p);
  REQUIRE(ranked.size() == 3);
  CHECK(ranked[0].key == "b");
  CHECK(ranked[1].key == "c");
  CHECK(ranked[2].key == "a");
}

TEST_CASE("rank_keyphrases: present-only graph follows PageRank order") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = kpindex::testing::random_graph(rng, 15, 0.3, false);
    const auto scores = pagerank(g, RankParams{});
    const auto ranked = rank_keyphrases(g, scores, unbounded());
    std::vector<std::pair<std::string, double>> expected(scores.begin(), scores.end());
    std::sort(expected.begin(), expected.end(), [](const auto& x, const auto& y) {
      if (x.second != y.second) return x.second > y.second;
      return x.first < y.first;
    });
    REQUIRE(ranked.size() == expected.size());
    for (std::size_t i = 0; i < ranked.size(); ++i) {
      CHECK(ranked[i].key == expected[i].first);
      CHECK(ranked[i].score == expected[i].second);
    }
  }
}

TEST_CASE("ranking: invariant under node insertion order") {
  std::mt19937 rng(19);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = kpindex::testing::random_graph(rng, 12, 0.3, true);
    std::vector<std::pair<std::string, NodeInfo>> nodes(g.nodes().begin(), g.nodes().end());
    std::vector<MultiEdge> edges;
    for (const auto& [ek, e] : g.edges()) edges.push_back(e);
    std::shuffle(nodes.begin(), nodes.end(), rng);
    std::shuffle(edges.begin(), edges.end(), rng);
    SemMultiGraph h(g.target());
    for (const auto& [k, info] : nodes) h.add_node(k, info);
    for (const auto& e : edges) {
      if (rng() % 2) {
        h.add_weight(e.v, e.u, e.layer, e.weight, e.provenance);
      } else {
        h.add_weight(e.u, e.v, e.layer, e.weight, e.provenance);
      }
    }
    const auto rg = rank_keyphrases(g, pagerank(g, RankParams{}), unbounded());
    const auto rh = rank_keyphrases(h, pagerank(h, RankParams{}), unbounded());
    CHECK(rg == rh);
  }
}

TEST_CASE("ranking: raising gamma_absent never demotes ABSENT keys") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    const auto g = kpindex::testing::random_graph(rng, 15, 0.3, true);
    const auto scores = pagerank(g, RankParams{});
    std::map<std::string, std::size_t> previous;
    for (double gamma : {0.1, 0.4, 0.8, 1.0, 1.5, 3.0}) {
      auto p = unbounded();
      p.gamma_absent = gamma;
      const auto ranked = rank_keyphrases(g, scores, p);
      std::map<std::string, std::size_t> present_above;
      std::size_t seen_present = 0;
      for (const auto& r : ranked) {
        if (r.origin == Origin::kPresent) {
          ++seen_present;
        } else {
          present_above[r.key] = seen_present;
        }
      }
      for (const auto& [k, above] : present_above) {
        if (previous.count(k)) CHECK(above <= previous.at(k));
      }
      previous = present_above;
    }
  }
}

TEST_CASE("RankParams: validation") {
  CHECK_NOTHROW(RankParams{}.validate());
  auto bad = [](auto mutate) {
    RankParams p;
    mutate(p);
    return p;
  };
  CHECK_THROWS_AS(bad([](RankParams& p) { p.damping = 0.0; }).validate(), UsageError);
  CHECK_THROWS_AS(bad([](RankParams& p) { p.damping = 1.0; }).validate(), UsageError);
  CHECK_THROWS_AS(bad([](RankParams& p) { p.tol = 0.0; }).validate(), UsageError);
  CHECK_THROWS_AS(bad([](RankParams& p) { p.max_iter = 0; }).validate(), UsageError);
  CHECK_THROWS_AS(bad([](RankParams& p) { p.gamma_absent = -0.1; }).validate(), UsageError);
  CHECK_THROWS_AS(bad([](RankParams& p) { p.top_n = 0; }).validate(), UsageError);
}

}
