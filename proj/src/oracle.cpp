#include "mkcs/oracle.hpp"

#include <cmath>
#include <set>
#include <string>

namespace mkcs {

namespace {

void guard(const Graph& g, int max_vertices) {
  if (g.num_vertices() > max_vertices)
    throw InvalidArgument("oracle: " + std::to_string(g.num_vertices()) + " vertices exceed the guard of " +
                          std::to_string(max_vertices));
}

// Vertex-by-vertex assignment to {uncoloured, 1..k}; colour c may be opened
// only after 1..c-1.
class ColourSearch {
 public:
  ColourSearch(const Graph& g, int k) : g_(g), k_(k), n_(g.num_vertices()), col_(n_ + 1, 0) {}

  int run() {
    best_ = -1;
    dfs(1, 0, 0);
    return best_;
  }
  const std::vector<int>& witness() const { return best_col_; }

 private:
  void dfs(Vertex v, int coloured, int opened) {
    if (coloured + (n_ - v + 1) <= best_) return;
    if (v > n_) {
      best_ = coloured;
      best_col_ = col_;
      return;
    }
    const int top = std::min(k_, opened + 1);
    for (int c = 1; c <= top; ++c) {
      bool ok = true;
      for (Vertex u : g_.neighbors(v))
        if (u < v && col_[u] == c) {
          ok = false;
          break;
        }
      if (!ok) continue;
      col_[v] = c;
      dfs(v + 1, coloured + 1, std::max(opened, c));
      col_[v] = 0;
      if (best_ == n_) return;
    }
    dfs(v + 1, coloured, opened);
  }

  const Graph& g_;
  int k_;
  int n_;
  std::vector<int> col_;
  std::vector<int> best_col_;
  int best_ = -1;
};

}  // namespace

int alpha_k_exact(const Graph& g, int k, int max_vertices) {
  guard(g, max_vertices);
  if (k < 1) throw InvalidArgument("alpha_k_exact: k must be positive");
  return ColourSearch(g, k).run();
}

std::vector<int> alpha_k_witness(const Graph& g, int k, int max_vertices) {
  guard(g, max_vertices);
  if (k < 1) throw InvalidArgument("alpha_k_witness: k must be positive");
  ColourSearch s(g, k);
  s.run();
  return s.witness();
}

int chi_exact(const Graph& g, int max_vertices) {
  guard(g, max_vertices);
  const int n = g.num_vertices();
  for (int k = 1; k < n; ++k)
    if (alpha_k_exact(g, k, max_vertices) == n) return k;
  return n;
}

std::vector<Eigen::MatrixXd> enumerate_Dnk(int n, int k, const std::optional<Graph>& g) {
  if (n < 1 || k < 1) throw InvalidArgument("enumerate_Dnk: need n >= 1 and k >= 1");
  if (g && g->num_vertices() != n) throw InvalidArgument("enumerate_Dnk: graph order differs from n");
  if (n * std::log2(k + 1.0) > 20.0 + 1e-12) throw InvalidArgument("enumerate_Dnk: (k+1)^n exceeds 2^20");

  std::vector<int> assign(n, 0);  // 0 = no colour, else 1..k
  std::set<std::string> seen;
  std::vector<Eigen::MatrixXd> out;
  for (;;) {
    std::string key(static_cast<std::size_t>(n) * n, '0');
    bool valid = true;
    for (int i = 0; i < n && valid; ++i)
      for (int j = 0; j < n; ++j)
        if (assign[i] && assign[i] == assign[j]) {
          if (i != j && g && g->adjacent(i + 1, j + 1)) {
            valid = false;
            break;
          }
          key[static_cast<std::size_t>(i) * n + j] = '1';
        }
    if (valid && seen.insert(key).second) {
      Eigen::MatrixXd x(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) x(i, j) = key[static_cast<std::size_t>(i) * n + j] == '1' ? 1.0 : 0.0;
      out.push_back(std::move(x));
    }
    int pos = 0;
    while (pos < n && assign[pos] == k) assign[pos++] = 0;
    if (pos == n) break;
    ++assign[pos];
  }
  return out;
}

AugmentedMatrix augment(const Eigen::MatrixXd& x, int k) {
  const int n = static_cast<int>(x.rows());
  AugmentedMatrix a(n);
  a.set(0, 0, k);
  for (int i = 0; i < n; ++i) {
    a.set(0, i + 1, x(i, i));
    for (int j = i; j < n; ++j) a.set(i + 1, j + 1, x(i, j));
  }
  return a;
}

}  // namespace mkcs
