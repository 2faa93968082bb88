#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mkcs/linalg.hpp"
#include "support/oracles.hpp"

using namespace mkcs;

namespace {

AugmentedMatrix from(std::initializer_list<std::initializer_list<double>> rows) {
  const int n = static_cast<int>(rows.size());
  Eigen::MatrixXd m(n, n);
  int i = 0;
  for (const auto& r : rows) {
    int j = 0;
    for (double v : r) m(i, j++) = v;
    ++i;
  }
  return AugmentedMatrix(m);
}

double max_abs(const Eigen::MatrixXd& a) { return a.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("psd projection of small matrices") {
  auto p = project_psd(from({{2, 0}, {0, -3}}));
  CHECK(max_abs(p.dense() - from({{2, 0}, {0, 0}}).dense()) < 1e-12);
  auto q = project_psd(from({{0, 1}, {1, 0}}));
  CHECK(max_abs(q.dense() - Eigen::MatrixXd::Constant(2, 2, 0.5)) < 1e-12);
}

TEST_CASE("nsd projection of small matrices") {
  auto p = project_nsd(from({{2, 0}, {0, -3}}));
  CHECK(max_abs(p.dense() - from({{0, 0}, {0, -3}}).dense()) < 1e-12);
  CHECK(max_abs(project_nsd(AugmentedMatrix(3)).dense()) == 0.0);
}

TEST_CASE("psd projection against an independent eigensolver") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 50; ++t) {
    const int n = 2 + t % 9;
    const Eigen::MatrixXd a = oracle::random_symmetric(n, rng);
    const AugmentedMatrix p = project_psd(AugmentedMatrix(a));
    CHECK(max_abs(p.dense() - oracle::psd_part(a)) < 1e-6);
    CHECK(max_abs(p.dense() - p.dense().transpose()) == 0.0);
    // Idempotence, orthogonality and the Moreau split.
    CHECK(max_abs(project_psd(p).dense() - p.dense()) < 1e-6);
    CHECK(std::abs(inner(AugmentedMatrix(a - p.dense()), p)) < 1e-6);
    const AugmentedMatrix q = project_nsd(AugmentedMatrix(a));
    CHECK(max_abs(p.dense() + q.dense() - a) < 1e-6);
    auto [d, v] = oracle::jacobi_eigen(p.dense());
    CHECK(d.minCoeff() > -1e-8);
  }
}

TEST_CASE("single precision spectral option stays close") {
  std::mt19937_64 rng(3);
  const Eigen::MatrixXd a = oracle::random_symmetric(12, rng);
  const auto p = project_psd(AugmentedMatrix(a), SpectralOptions{true});
  CHECK(max_abs(p.dense() - oracle::psd_part(a)) < 1e-4);
}

TEST_CASE("non-finite input is rejected") {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(3, 3);
  a(1, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS(project_psd(AugmentedMatrix(a)));
}

TEST_CASE("free index map") {
  Graph g(4);
  g.add_edge(1, 2);
  g.add_edge(3, 4);
  FreeIndexMap map(g);
  CHECK(map.size() == 4 + 6 - 2);
  CHECK(map.index(1, 2) == -1);
  CHECK(map.index(4, 3) == -1);
  int diag = 0;
  for (int p = 0; p < map.size(); ++p) {
    auto [i, j] = map.entry(p);
    CHECK(map.index(i, j) == p);
    CHECK(map.index(j, i) == p);
    CHECK(map.weights()[p] == (i == j ? 3.0 : 2.0));
    CHECK(map.is_diagonal(p) == (i == j));
    diag += i == j;
  }
  CHECK(diag == 4);
  for (int seed = 0; seed < 10; ++seed) {
    const Graph r = oracle::random_graph(10, 0.5, seed);
    CHECK(FreeIndexMap(r).size() == 10 + 45 - r.num_edges());
  }
}

TEST_CASE("mat_to_vec diagonal averaging") {
  Graph g(2);
  FreeIndexMap map(g);
  AugmentedMatrix a(2);
  a.set(1, 1, 3.0);
  CHECK(mat_to_vec(a, map)(map.diagonal(1)) == doctest::Approx(1.0));
  AugmentedMatrix b(2);
  b.set(0, 1, 3.0);
  CHECK(mat_to_vec(b, map)(map.diagonal(1)) == doctest::Approx(2.0));
  AugmentedMatrix c(2);
  for (int i = 1; i <= 2; ++i) {
    c.set(i, i, 0.7);
    c.set(0, i, 0.7);
  }
  const auto v = mat_to_vec(c, map);
  CHECK(v(map.diagonal(1)) == doctest::Approx(0.7));
  CHECK(v(map.diagonal(2)) == doctest::Approx(0.7));
}

TEST_CASE("vec_to_mat structure and round trip") {
  const Graph empty(3);
  FreeIndexMap m0(empty);
  const AugmentedMatrix ones = vec_to_mat(Eigen::VectorXd::Ones(m0.size()), m0, 2);
  CHECK(ones(0, 0) == 2.0);
  for (int i = 1; i <= 3; ++i) {
    CHECK(ones(0, i) == 1.0);
    for (int j = 1; j <= 3; ++j) CHECK(ones(i, j) == 1.0);
  }
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int seed = 0; seed < 20; ++seed) {
    const Graph g = oracle::random_graph(7, 0.4, seed);
    FreeIndexMap map(g);
    Eigen::VectorXd v(map.size());
    for (int p = 0; p < map.size(); ++p) v(p) = u(rng);
    const AugmentedMatrix x = vec_to_mat(v, map, 3);
    CHECK(x(0, 0) == 3.0);
    for (const auto& [a, b] : g.edges()) {
      CHECK(x(a, b) == 0.0);
      CHECK(x(b, a) == 0.0);
    }
    for (int i = 1; i <= 7; ++i) CHECK(x(0, i) == x(i, i));
    CHECK((mat_to_vec(x, map) - v).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("objective and initial point") {
  const auto ib = AugmentedMatrix::objective(3);
  CHECK(ib(0, 0) == 0.0);
  CHECK(ib(1, 1) == 1.0);
  CHECK(ib(1, 2) == 0.0);
  const auto x0 = AugmentedMatrix::initial_point(3, 2);
  CHECK(x0(0, 0) == 2.0);
  CHECK(x0(0, 2) == 1.0);
  CHECK(x0(2, 2) == 1.0);
  CHECK(x0(1, 2) == 0.0);
  CHECK(x0.trace_vertices() == 3.0);
}
