#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mkcs/oracle.hpp"
#include "support/oracles.hpp"

using namespace mkcs;

TEST_CASE("alpha_k examples") {
  CHECK(alpha_k_exact(oracle::complete_graph(5), 2) == 2);
  CHECK(alpha_k_exact(oracle::cycle_graph(5), 1) == 2);
  CHECK(alpha_k_exact(oracle::cycle_graph(5), 2) == 4);
  CHECK(alpha_k_exact(oracle::cycle_graph(5), 3) == 5);
  CHECK(alpha_k_exact(Graph(7), 1) == 7);
  CHECK(alpha_k_exact(oracle::petersen(), 1) == 4);
  CHECK(alpha_k_exact(oracle::petersen(), 2) == 7);
  CHECK_THROWS_AS(alpha_k_exact(Graph(41), 1), InvalidArgument);
  CHECK_THROWS_AS(alpha_k_exact(Graph(4), 0), InvalidArgument);
}

TEST_CASE("witness matches the value") {
  for (int seed = 0; seed < 30; ++seed) {
    const Graph g = oracle::random_graph(9, 0.45, seed);
    const int k = 1 + seed % 3;
    const auto w = alpha_k_witness(g, k);
    int coloured = 0;
    for (int v = 1; v <= 9; ++v) {
      CHECK(w[v] >= 0);
      CHECK(w[v] <= k);
      coloured += w[v] > 0;
    }
    for (const auto& [a, b] : g.edges()) CHECK((w[a] == 0 || w[a] != w[b]));
    CHECK(coloured == alpha_k_exact(g, k));
  }
}

TEST_CASE("chromatic number examples") {
  CHECK(chi_exact(oracle::complete_graph(5)) == 5);
  CHECK(chi_exact(oracle::cycle_graph(5)) == 3);
  CHECK(chi_exact(oracle::cycle_graph(6)) == 2);
  CHECK(chi_exact(oracle::petersen()) == 3);
  CHECK(chi_exact(Graph(4)) == 1);
}

TEST_CASE("Dnk enumeration") {
  CHECK(enumerate_Dnk(1, 1).size() == 2);
  CHECK(enumerate_Dnk(2, 1).size() == 4);
  // Set partitions of subsets of {1,2} into at most 2 blocks: 1 + 2 + 2 = 5.
  CHECK(enumerate_Dnk(2, 2).size() == 5);
  // With an edge the merged block disappears.
  CHECK(enumerate_Dnk(2, 2, Graph(2, {{1, 2}})).size() == 4);
  for (const auto& x : enumerate_Dnk(4, 2)) {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) CHECK((x(i, j) == 0.0 || x(i, j) == 1.0));
    CHECK(x.isApprox(x.transpose()));
  }
  Eigen::MatrixXd half = Eigen::MatrixXd::Constant(2, 2, 0.5);
  for (const auto& x : enumerate_Dnk(2, 2)) CHECK_FALSE(x.isApprox(half));
  CHECK_THROWS_AS(enumerate_Dnk(30, 3), InvalidArgument);
}

TEST_CASE("alpha_k is the best trace over Dnk") {
  for (int seed = 0; seed < 20; ++seed) {
    const Graph g = oracle::random_graph(6, 0.5, 500 + seed);
    for (int k = 1; k <= 3; ++k) {
      double best = 0;
      for (const auto& x : enumerate_Dnk(6, k, g)) best = std::max(best, x.trace());
      CHECK(static_cast<int>(best) == alpha_k_exact(g, k));
    }
  }
}

TEST_CASE("alpha_k is monotone in k and reaches n at chi") {
  for (int seed = 0; seed < 20; ++seed) {
    const Graph g = oracle::random_graph(10, 0.5, 600 + seed);
    const int chi = chi_exact(g);
    int prev = 0;
    for (int k = 1; k <= chi; ++k) {
      const int a = alpha_k_exact(g, k);
      CHECK(a >= prev);
      CHECK((a == 10) == (k == chi));
      prev = a;
    }
  }
}

TEST_CASE("augment") {
  Eigen::MatrixXd x = Eigen::MatrixXd::Identity(3, 3);
  const auto a = augment(x, 2);
  CHECK(a.order() == 4);
  CHECK(a(0, 0) == 2.0);
  for (int i = 1; i <= 3; ++i) CHECK(a(0, i) == 1.0);
}
