#pragma once

#include <optional>
#include <vector>

#include "mkcs/graph.hpp"
#include "mkcs/linalg.hpp"

namespace mkcs {

// Exhaustive references for small graphs. Every routine throws InvalidArgument
// above its size guard.

inline constexpr int kOracleMaxVertices = 40;

// Maximum number of vertices colourable with k colours.
int alpha_k_exact(const Graph& g, int k, int max_vertices = kOracleMaxVertices);

// Witness colouring for alpha_k_exact: per vertex, index 0 unused, 0 = uncoloured.
std::vector<int> alpha_k_witness(const Graph& g, int k, int max_vertices = kOracleMaxVertices);

int chi_exact(const Graph& g, int max_vertices = kOracleMaxVertices);

// All n x n matrices P P^T with P an n x k binary matrix of row sums <= 1,
// without duplicates. With a graph, only those vanishing on its edges.
std::vector<Eigen::MatrixXd> enumerate_Dnk(int n, int k, const std::optional<Graph>& g = std::nullopt);

// Border the n x n matrix with its diagonal and put k in the corner.
AugmentedMatrix augment(const Eigen::MatrixXd& x, int k);

}  // namespace mkcs
