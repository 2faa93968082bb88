#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <limits>

#include "json.hpp"
#include "mkcs/cuts.hpp"
#include "mkcs/oracle.hpp"
#include "mkcs/projection.hpp"
#include "support/oracles.hpp"

using namespace mkcs;

namespace {

constexpr double kAll = -std::numeric_limits<double>::infinity();

// Free-entry vector of a symmetric vertex-block assignment.
Eigen::VectorXd point(const FreeIndexMap& map, const std::function<double(Vertex, Vertex)>& f) {
  Eigen::VectorXd x(map.size());
  for (int p = 0; p < map.size(); ++p) {
    auto [i, j] = map.entry(p);
    x(p) = f(i, j);
  }
  return x;
}

Eigen::VectorXd from_coloring(const FreeIndexMap& map, const std::vector<int>& col) {
  return point(map, [&](Vertex i, Vertex j) { return col[i] && col[i] == col[j] ? 1.0 : 0.0; });
}

Cut cut_of(std::vector<std::pair<int, double>> co, double rhs, CutFamily f, std::uint64_t id) {
  Cut c;
  c.coeffs = std::move(co);
  c.rhs = rhs;
  c.family = f;
  c.id = id;
  return c;
}

}  // namespace

TEST_CASE("kappa ranks") {
  CHECK(kappa_rank(Clique{{1, 2, 3, 4}, true}, 2) == 2);
  CHECK(kappa_rank(Clique{{1, 2, 3, 4}, true}, 6) == 4);
  CHECK(kappa_rank(Hole5{{1, 2, 3, 4, 5}}, 2) == 4);
  CHECK(kappa_rank(Hole5{{1, 2, 3, 4, 5}}, 1) == 2);
  CHECK(kappa_rank(Hole5{{1, 2, 3, 4, 5}}, 3) == 5);
  CHECK(kappa_rank(Clique{{1, 2}, true}, 0) == 0);
  CHECK(kappa_rank(Hole5{{1, 2, 3, 4, 5}}, 0) == 0);
  CHECK(kappa_rank_odd_hole(7, 2) == 6);
  // Closed form against the exact oracle on the hole itself.
  for (int kappa = 1; kappa <= 3; ++kappa) {
    CHECK(kappa_rank_odd_hole(5, kappa) == alpha_k_exact(oracle::cycle_graph(5), kappa));
    CHECK(kappa_rank_odd_hole(7, kappa) == alpha_k_exact(oracle::cycle_graph(7), kappa));
  }
}

TEST_CASE("cut builder drops edge entries and merges terms") {
  Graph g(3);
  g.add_edge(1, 2);
  FreeIndexMap map(g);
  CutBuilder cb(map);
  const Cut c = cb.add(1, 2, 1.0).add(1, 3, 1.0).add(3, 1, 2.0).add(3, 3, -1.0).add(2, 2, 1.0).add(2, 2, -1.0)
                    .build(0.5, CutFamily::T1, 9);
  REQUIRE(c.coeffs.size() == 2);
  CHECK(c.coeffs[0].first < c.coeffs[1].first);
  CHECK(c.coeffs[0] == std::make_pair(map.index(1, 3), 3.0));
  CHECK(c.coeffs[1] == std::make_pair(map.diagonal(3), -1.0));
  CHECK(c.support() == std::vector<int>{map.index(1, 3), map.diagonal(3)});
  const auto j = nlohmann::json::parse(c.to_json());
  CHECK(j["family"] == "T1");
  CHECK(j["id"] == 9);
  CHECK(j["coeffs"].size() == 2);
}

TEST_CASE("triangle separation") {
  const Graph g(3);
  FreeIndexMap map(g);
  auto at = [](Vertex i, Vertex j) {
    if (i > j) std::swap(i, j);
    if (i == 3 && j == 3) return 1.0;
    if (j == 3) return 0.8;
    if (i == 1 && j == 2) return 0.2;
    return 0.0;
  };
  const auto x = point(map, at);
  auto r = separate_triangle(g, map, x, 3, 1e-2);
  // Apex 3 is violated by 0.4, apexes 1 and 2 by 0.2 each.
  REQUIRE(r.count(CutFamily::T1) == 3);
  double top = 0.0;
  for (const auto& c : r.candidates) {
    CHECK(c.cut.violation(x) == doctest::Approx(c.violation));
    top = std::max(top, c.violation);
  }
  CHECK(top == doctest::Approx(0.4));
  CHECK(r.count(CutFamily::T2) == 0);

  const auto id = point(map, [](Vertex i, Vertex j) { return i == j ? 1.0 : 0.0; });
  CHECK(separate_triangle(g, map, id, 1, 1e-2).count(CutFamily::T1) == 0);

  const auto diag07 = point(map, [](Vertex i, Vertex j) { return i == j ? 0.7 : 0.0; });
  auto t2 = separate_triangle(g, map, diag07, 1, 1e-2);
  REQUIRE(t2.count(CutFamily::T2) == 1);
  CHECK(t2.candidates.back().violation == doctest::Approx(1.1));
  CHECK(separate_triangle(g, map, diag07, 3, 1e-2).count(CutFamily::T2) == 0);

  // Triangles never produce T2.
  const Graph k3 = oracle::complete_graph(3);
  FreeIndexMap m3(k3);
  CHECK(separate_triangle(k3, m3, point(m3, [](Vertex, Vertex) { return 0.9; }), 1, kAll).count(CutFamily::T2) == 0);
}

TEST_CASE("clique external separation") {
  Graph g(3);
  g.add_edge(1, 2);
  FreeIndexMap map(g);
  const auto cliques = enumerate_cliques(g, 10.0);
  const auto x = point(map, [](Vertex i, Vertex j) {
    if (i == 3 && j == 3) return 1.0;
    if (j == 3) return 0.6;
    return i == j ? 1.0 : 0.0;
  });
  std::mt19937_64 rng(0);
  auto r = separate_clique_external(g, map, x, cliques, 2, 1e-2, 100000, rng);
  bool found = false;
  for (const auto& c : r.candidates)
    if (c.cut.coeffs.size() == 3 && std::abs(c.violation - 0.2) < 1e-12) found = true;
  CHECK(found);

  // Integer points from colorings violate nothing.
  for (int seed = 0; seed < 10; ++seed) {
    const Graph h = oracle::random_graph(8, 0.5, seed);
    FreeIndexMap hm(h);
    const auto col = alpha_k_witness(h, 3);
    const auto xi = from_coloring(hm, col);
    CHECK(separate_clique_external(h, hm, xi, enumerate_cliques(h, 10.0), 3, 1e-9, 100000, rng)
              .candidates.empty());
  }
}

TEST_CASE("non-maximal six-cliques are extended before use") {
  const Graph k8 = oracle::complete_graph(8);
  Graph g(9);
  for (const auto& [a, b] : k8.edges()) g.add_edge(a, b);
  FreeIndexMap map(g);
  const auto cliques = enumerate_cliques(g, 10.0);
  CHECK(cliques.size6.size() == 28);
  const auto x = point(map, [](Vertex i, Vertex j) { return (j == 9 && i != 9) ? 0.3 : (i == j ? 1.0 : 0.0); });
  std::mt19937_64 rng(0);
  auto r = separate_clique_external(g, map, x, cliques, 3, 1e-2, 100000, rng);
  REQUIRE_FALSE(r.candidates.empty());
  for (const auto& c : r.candidates) {
    // 8 clique members plus the external diagonal.
    CHECK(c.cut.coeffs.size() == 9);
    CHECK(c.violation == doctest::Approx(8 * 0.3 - 1.0));
  }
}

TEST_CASE("clique union separation") {
  Graph g(4);
  g.add_edge(1, 2);
  g.add_edge(3, 4);
  FreeIndexMap map(g);
  const auto cliques = enumerate_cliques(g, 10.0);
  const auto x = point(map, [](Vertex i, Vertex j) { return i == j ? 0.75 : 0.0; });
  std::mt19937_64 rng(0);
  auto r = separate_clique_union(g, map, x, cliques, 1, 1e-2, 100000, rng);
  REQUIRE(r.candidates.size() == 1);
  CHECK(r.candidates[0].violation == doctest::Approx(2.0));
  CHECK(r.candidates[0].cut.rhs == 1.0);
  // |Q| + |Q'| = 4 <= k.
  CHECK(separate_clique_union(g, map, x, cliques, 4, kAll, 100000, rng).candidates.empty());
  const auto xi = from_coloring(map, {0, 1, 0, 1, 0});
  CHECK(separate_clique_union(g, map, xi, cliques, 1, 1e-9, 100000, rng).candidates.empty());
}

TEST_CASE("odd hole separation") {
  Graph g(6);
  for (int i = 1; i <= 5; ++i) g.add_edge(i, i % 5 + 1);
  FreeIndexMap map(g);
  const auto holes = enumerate_5holes(g, 10.0);
  std::mt19937_64 rng(0);
  const auto x = point(map, [](Vertex i, Vertex j) {
    if (i == 6 && j == 6) return 1.0;
    if (j == 6) return 0.5;
    return 0.0;
  });
  auto r = separate_odd_hole(g, map, x, holes, 2, 1e-2, 100000, rng);
  REQUIRE(r.candidates.size() == 1);
  CHECK(r.candidates[0].violation == doctest::Approx(0.5));
  const auto zero = point(map, [](Vertex, Vertex) { return 0.0; });
  CHECK(separate_odd_hole(g, map, zero, holes, 2, 1e-2, 100000, rng).candidates.empty());
  const auto xi = from_coloring(map, {0, 1, 2, 1, 2, 0, 1});
  CHECK(separate_odd_hole(g, map, xi, holes, 2, 1e-9, 100000, rng).candidates.empty());
}

TEST_CASE("enumeration limits draw seeded subsets") {
  const Graph g = oracle::random_graph(12, 0.5, 3);
  FreeIndexMap map(g);
  const auto cliques = enumerate_cliques(g, 10.0);
  const auto x = point(map, [](Vertex, Vertex) { return 0.5; });
  std::mt19937_64 a(42), b(42);
  auto ra = separate_clique_external(g, map, x, cliques, 3, kAll, 3, a);
  auto rb = separate_clique_external(g, map, x, cliques, 3, kAll, 3, b);
  REQUIRE(ra.candidates.size() == rb.candidates.size());
  for (std::size_t i = 0; i < ra.candidates.size(); ++i) CHECK(cut_key(ra.candidates[i].cut) == cut_key(rb.candidates[i].cut));
  CHECK(ra.candidates.size() <= 3u * 12u);
  std::mt19937_64 c(1);
  auto pairs = separate_clique_union(g, map, x, cliques, 1, kAll, 5, c);
  CHECK(pairs.candidates.size() <= 5);
}

TEST_CASE("selection rules") {
  std::set<CutKey> existing;
  SeparationReport one;
  one.add(cut_of({{0, 1.0}}, 0.0, CutFamily::CliqueExt, 1), 0.5);
  CHECK(select_cuts({one}, 1, {10, 5}, existing).size() == 1);
  // Same cut again is a duplicate.
  CHECK(select_cuts({one}, 1, {10, 5}, existing).empty());

  SeparationReport six;
  for (int i = 0; i < 6; ++i) six.add(cut_of({{0, 1.0}, {i + 1, 1.0}}, 0.0, CutFamily::T1, i), 0.1 * (i + 1));
  std::set<CutKey> fresh;
  auto acc = select_cuts({six}, 2, {100, 5}, fresh);
  CHECK(acc.size() == 5);
  // The least violated one lost.
  for (const auto& c : acc) CHECK(c.id != 0);
  std::set<CutKey> fresh2;
  CHECK(select_cuts({six}, 2, {2, 5}, fresh2).size() == 2);
  std::set<CutKey> fresh3;
  CHECK(select_cuts({six}, 1, {100, 5}, fresh3).empty());

  // Ties: family order, then id.
  SeparationReport tie;
  tie.add(cut_of({{1, 1.0}}, 0.0, CutFamily::T2, 0), 0.3);
  tie.add(cut_of({{2, 1.0}}, 0.0, CutFamily::Hole5, 5), 0.3);
  tie.add(cut_of({{3, 1.0}}, 0.0, CutFamily::Hole5, 2), 0.3);
  tie.add(cut_of({{4, 1.0}}, 0.0, CutFamily::T1, 7), 0.3);
  std::set<CutKey> fresh4;
  auto t = select_cuts({tie}, 2, {3, 5}, fresh4);
  REQUIRE(t.size() == 3);
  CHECK(t[0].family == CutFamily::T1);
  CHECK(t[1].id == 2);
  CHECK(t[2].id == 5);
}

TEST_CASE("clustering") {
  const Cut a = cut_of({{0, 1.0}, {1, 1.0}}, 0, CutFamily::T1, 0);
  const Cut b = cut_of({{2, 1.0}}, 0, CutFamily::T1, 1);
  const Cut c = cut_of({{1, 1.0}, {3, 1.0}}, 0, CutFamily::T1, 2);
  CHECK(cluster_cuts({a, b}).size() == 1);
  CHECK(cluster_cuts({a, c}).size() == 2);
  std::vector<Cut> star = {cut_of({{0, 1.0}, {1, 1.0}, {2, 1.0}, {3, 1.0}}, 0, CutFamily::T1, 0)};
  for (int i = 0; i < 4; ++i) star.push_back(cut_of({{i, 1.0}, {10 + i, 1.0}}, 0, CutFamily::T1, i + 1));
  CHECK(cluster_cuts(star).size() == 2);

  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> var(0, 40);
  std::vector<Cut> many;
  for (int i = 0; i < 60; ++i) {
    std::set<int> s;
    while (s.size() < 4) s.insert(var(rng));
    std::vector<std::pair<int, double>> co;
    for (int p : s) co.push_back({p, 1.0});
    many.push_back(cut_of(co, 0, CutFamily::T1, i));
  }
  const auto cl = cluster_cuts(many);
  std::vector<int> seen(many.size(), 0);
  for (const auto& group : cl) {
    std::set<int> used;
    for (int idx : group) {
      ++seen[idx];
      for (const auto& [p, a2] : many[idx].coeffs) CHECK(used.insert(p).second);
    }
  }
  for (int s : seen) CHECK(s == 1);
}

TEST_CASE("cuts are valid on every integer point of small graphs") {
  for (int seed = 0; seed < 12; ++seed) {
    const Graph g = oracle::random_graph(6, 0.3 + 0.04 * seed, 900 + seed);
    FreeIndexMap map(g);
    const auto cliques = enumerate_cliques(g, 10.0);
    const auto holes = enumerate_5holes(g, 10.0);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0, 1);
    Eigen::VectorXd x(map.size());
    for (int p = 0; p < map.size(); ++p) x(p) = u(rng);
    for (int k = 1; k <= 3; ++k) {
      std::vector<Cut> all;
      const std::vector<SeparationReport> reports = {
          separate_triangle(g, map, x, k, kAll),
          separate_clique_external(g, map, x, cliques, k, kAll, 100000, rng),
          separate_clique_union(g, map, x, cliques, k, kAll, 100000, rng),
          separate_odd_hole(g, map, x, holes, k, kAll, 100000, rng)};
      for (const auto& r : reports)
        for (const auto& c : r.candidates) all.push_back(c.cut);
      for (const auto& xm : enumerate_Dnk(6, k, g)) {
        const Eigen::VectorXd v = mat_to_vec(augment(xm, k), map);
        for (const auto& c : all) CHECK(c.lhs(v) <= c.rhs + 1e-9);
      }
    }
  }
}

TEST_CASE("smaller clique cut follows from the larger one on feasible points") {
  // If sum_{Q} X_il <= X_ll holds then dropping a member keeps it, since X >= 0.
  const Graph k4 = oracle::complete_graph(4);
  Graph g(5);
  for (const auto& [a, b] : k4.edges()) g.add_edge(a, b);
  FreeIndexMap map(g);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0, 1);
  for (int t = 0; t < 200; ++t) {
    Eigen::VectorXd x(map.size());
    for (int p = 0; p < map.size(); ++p) x(p) = u(rng);
    double full = -x(map.diagonal(5));
    for (int i = 1; i <= 4; ++i) full += x(map.index(i, 5));
    if (full > 0) continue;
    for (int h = 1; h <= 4; ++h) {
      double part = -x(map.diagonal(5));
      for (int i = 1; i <= 4; ++i)
        if (i != h) part += x(map.index(i, 5));
      CHECK(part <= 1e-12);
    }
  }
}

TEST_CASE("even holes need no cuts once triangle cuts hold") {
  // On 4- and 6-holes with an external vertex, points satisfying every T1 cut
  // also satisfy sum_{C} X_il <= (|C|/2) X_ll.
  for (int len : {4, 6}) {
    Graph g(len + 1);
    for (int i = 1; i <= len; ++i) g.add_edge(i, i % len + 1);
    FreeIndexMap map(g);
    const int l = len + 1;
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(map.size());
    std::vector<Cut> t1;
    for (auto& c : separate_triangle(g, map, zero, 3, kAll).candidates)
      if (c.cut.family == CutFamily::T1 && !c.cut.coeffs.empty()) t1.push_back(c.cut);
    std::vector<std::vector<int>> singles;
    for (int i = 0; i < static_cast<int>(t1.size()); ++i) singles.push_back({i});
    const Eigen::Map<const Eigen::VectorXd> w(map.weights().data(), map.size());
    std::mt19937_64 rng(len);
    std::uniform_real_distribution<double> u(0, 1);
    for (int t = 0; t < 30; ++t) {
      Eigen::VectorXd x0(map.size());
      for (int p = 0; p < map.size(); ++p) x0(p) = u(rng);
      const auto st = dykstra(x0, w, t1, singles, DykstraOptions{1e-12, 100000});
      REQUIRE(st.converged);
      double lhs = 0.0;
      for (int i = 1; i <= len; ++i) lhs += st.x(map.index(i, l));
      CHECK(lhs <= len / 2.0 * st.x(map.diagonal(l)) + 1e-9);
    }
  }
}
