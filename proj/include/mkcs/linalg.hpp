#pragma once

#include <Eigen/Dense>
#include <span>
#include <utility>
#include <vector>

#include "mkcs/graph.hpp"

namespace mkcs {

// Symmetric (n+1)x(n+1) matrix whose row/column 0 is the border. The
// constructor symmetrizes its input, so every value of this type is exactly
// symmetric.
class AugmentedMatrix {
 public:
  AugmentedMatrix() = default;
  explicit AugmentedMatrix(int num_vertices) : m_(Eigen::MatrixXd::Zero(num_vertices + 1, num_vertices + 1)) {}
  explicit AugmentedMatrix(Eigen::MatrixXd m);

  // Ibar: zero border, identity on the vertex block.
  static AugmentedMatrix objective(int num_vertices);
  // (k e^T; e I), the starting point of the cutting-plane solver.
  static AugmentedMatrix initial_point(int num_vertices, int k);

  int order() const { return static_cast<int>(m_.rows()); }
  int num_vertices() const { return order() - 1; }
  double operator()(int i, int j) const { return m_(i, j); }
  const Eigen::MatrixXd& dense() const { return m_; }

  // Writes both (i,j) and (j,i).
  void set(int i, int j, double v) {
    m_(i, j) = v;
    m_(j, i) = v;
  }

  double frobenius_norm() const { return m_.norm(); }
  double trace_vertices() const { return m_.diagonal().tail(num_vertices()).sum(); }

 private:
  Eigen::MatrixXd m_;
};

double inner(const AugmentedMatrix& a, const AugmentedMatrix& b);

struct SpectralOptions {
  bool single_precision = false;
};

// Q max(D,0) Q^T. Throws std::runtime_error on non-finite input.
AugmentedMatrix project_psd(const AugmentedMatrix& a, SpectralOptions opts = {});
// Q min(D,0) Q^T, i.e. -P_psd(-A).
AugmentedMatrix project_nsd(const AugmentedMatrix& a, SpectralOptions opts = {});

// Bijection between the free entries {(i,j): 1 <= i <= j <= n, {i,j} not an
// edge} and 0..m-1. Diagonal entries get weight 3 (they also stand for the
// two border copies), off-diagonal entries weight 2.
class FreeIndexMap {
 public:
  explicit FreeIndexMap(const Graph& g);

  int size() const { return static_cast<int>(pairs_.size()); }
  int num_vertices() const { return n_; }
  // -1 when {i,j} is an edge. Argument order does not matter.
  int index(Vertex i, Vertex j) const { return lookup_[static_cast<std::size_t>(i) * (n_ + 1) + j]; }
  int diagonal(Vertex i) const { return index(i, i); }
  std::pair<Vertex, Vertex> entry(int p) const { return pairs_[p]; }
  bool is_diagonal(int p) const { return pairs_[p].first == pairs_[p].second; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  int n_ = 0;
  std::vector<std::pair<Vertex, Vertex>> pairs_;
  std::vector<int> lookup_;
  std::vector<double> weights_;
};

// Diagonal coordinates become A_ii/3 + 2 A_0i/3, off-diagonal free
// coordinates copy A_ij.
Eigen::VectorXd mat_to_vec(const AugmentedMatrix& a, const FreeIndexMap& map);
// Corner k, border = diagonal = diagonal coordinates, edge entries 0.
AugmentedMatrix vec_to_mat(const Eigen::VectorXd& v, const FreeIndexMap& map, int k);

}  // namespace mkcs
