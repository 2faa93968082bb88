#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "json.hpp"
#include "mkcs/int_admm.hpp"
#include "mkcs/oracle.hpp"
#include "support/oracles.hpp"

using namespace mkcs;

namespace {

// Indicator matrix of a colouring with a k corner.
AugmentedMatrix from_colors(const std::vector<int>& color, int k) {
  const int n = static_cast<int>(color.size()) - 1;
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (color[i] && color[i] == color[j]) x(i - 1, j - 1) = 1.0;
  return augment(x, k);
}

}  // namespace

TEST_CASE("defaults") {
  IntAdmmParams p;
  CHECK(p.beta0 == 0.05);
  CHECK(p.beta_incr == 1.0001);
  CHECK(p.beta_decr == 0.5);
  CHECK(p.beta_min == 0.001);
  CHECK(p.eps_int == 1e-3);
  CHECK(p.max_tries_without_impr == 3);
  CHECK(p.min_iters_after_reset == 10);
  CHECK(p.max_iter == 60000);
  p.beta_decr = 1.5;
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
}

TEST_CASE("sphere projection") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 1000; ++t) {
    const int n = 2 + t % 9;
    const int k = 1 + t % 3;
    const bool fix = t % 2 == 0;
    const AugmentedMatrix a(oracle::random_symmetric(n + 1, rng, 3.0));
    const AugmentedMatrix z = project_sphere(a, k, fix);
    Eigen::MatrixXd c = Eigen::MatrixXd::Constant(n + 1, n + 1, 0.5);
    c(0, 0) += k;
    const double r = (n + 1) / 2.0;
    if (fix) CHECK(z(0, 0) == k);
    CHECK((z.dense() - c).norm() == doctest::Approx(r).epsilon(1e-9));
    const AugmentedMatrix zz = project_sphere(z, k, fix);
    CHECK((zz.dense() - z.dense()).norm() <= 1e-9 * (1 + z.frobenius_norm()));
  }
}

TEST_CASE("indicator matrices lie on the sphere") {
  // Every feasible point sits on the sphere, so projecting it is the identity.
  const auto pts = enumerate_Dnk(4, 2);
  for (const auto& x : pts) {
    const AugmentedMatrix a = augment(x, 2);
    const AugmentedMatrix z = project_sphere(a, 2, true);
    CHECK((z.dense() - a.dense()).norm() <= 1e-9);
  }
}

TEST_CASE("rounding examples") {
  const Graph c5 = oracle::cycle_graph(5);
  std::vector<int> color = {0, 1, 2, 1, 2, 0};
  auto r = round_and_verify(from_colors(color, 2), c5, 2);
  REQUIRE(std::holds_alternative<Coloring>(r));
  const auto& col = std::get<Coloring>(r);
  CHECK(col.value == 4);
  CHECK(col.is_feasible(c5, 2));
  const auto j = nlohmann::json::parse(col.to_json());
  CHECK(j["value"] == 4);
  CHECK(j["colors"].size() == 4);

  // Near-integral entries round.
  Eigen::MatrixXd noisy = from_colors(color, 2).dense();
  noisy.array() += 0.3;
  CHECK(std::holds_alternative<Coloring>(round_and_verify(AugmentedMatrix(noisy), c5, 2)));

  // (a) an edge inside a class.
  std::vector<int> bad = {0, 1, 1, 2, 2, 0};
  auto ra = round_and_verify(from_colors(bad, 2), c5, 2);
  REQUIRE(std::holds_alternative<Infeasible>(ra));
  CHECK(std::get<Infeasible>(ra).condition == 'a');

  // (d) a broken transitive triple on an empty graph.
  Eigen::MatrixXd x = Eigen::MatrixXd::Identity(3, 3);
  x(0, 1) = x(1, 0) = 1.0;
  x(1, 2) = x(2, 1) = 1.0;
  auto rd = round_and_verify(augment(x, 2), Graph(3), 2);
  REQUIRE(std::holds_alternative<Infeasible>(rd));
  CHECK(std::get<Infeasible>(rd).condition == 'd');

  // (e) too many classes.
  auto re = round_and_verify(augment(Eigen::MatrixXd::Identity(3, 3), 2), Graph(3), 2);
  REQUIRE(std::holds_alternative<Infeasible>(re));
  CHECK(std::get<Infeasible>(re).condition == 'e');
}

TEST_CASE("rounding accepts exactly the feasible points") {
  for (int seed = 0; seed < 10; ++seed) {
    const Graph g = oracle::random_graph(5, 0.4, 900 + seed);
    for (int k = 1; k <= 2; ++k) {
      for (const auto& x : enumerate_Dnk(5, k)) {
        bool vanishes = true;
        for (const auto& [a, b] : g.edges()) vanishes = vanishes && x(a - 1, b - 1) == 0.0;
        const auto r = round_and_verify(augment(x, k), g, k);
        CHECK(std::holds_alternative<Coloring>(r) == vanishes);
        if (const auto* c = std::get_if<Coloring>(&r)) CHECK(c->value == static_cast<int>(x.trace() + 0.5));
      }
    }
  }
}

TEST_CASE("integer search on small graphs") {
  IntAdmmParams p;
  const Graph k5 = oracle::complete_graph(5);
  auto r = int_admm(k5, 2, p, std::nullopt, 2.0);
  REQUIRE(r.best);
  CHECK(r.best->value == 2);
  CHECK(r.stop == IntStop::UpperBoundMatched);

  for (int seed = 0; seed < 10; ++seed) {
    const Graph g = oracle::random_graph(9, 0.4, 40 + seed);
    const int k = 1 + seed % 3;
    p.max_iter = 5000;
    auto res = int_admm(g, k, p, std::nullopt, -1);
    const int alpha = alpha_k_exact(g, k);
    if (res.best) {
      CHECK(res.best->is_feasible(g, k));
      CHECK(res.best->value <= alpha);
      CHECK(res.first_value <= res.best->value);
      const AugmentedMatrix m = from_colors(res.best->color, k);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.dense());
      CHECK(es.eigenvalues().minCoeff() > -1e-9);
      int rank = 0;
      for (int i = 0; i < es.eigenvalues().size(); ++i) rank += es.eigenvalues()(i) > 1e-9;
      CHECK(rank <= k);
    }
    long last = -1;
    for (const auto& t : res.trace) {
      CHECK(t.t > last);
      last = t.t;
      CHECK(t.beta >= p.beta_min);
    }
  }
}

TEST_CASE("trace record keys") {
  IntTraceRecord r{5, 0.05, 0.1, 0.2, true, -1};
  const auto j = nlohmann::json::parse(r.to_json());
  for (const char* key : {"t", "beta", "primal_res_Y", "primal_res_Z", "converged_event", "feasible_value"})
    CHECK(j.contains(key));
  CHECK(j["feasible_value"].is_null());
}
