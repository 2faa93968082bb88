#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <istream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mkcs {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

// Simple undirected graph on vertices 1..n. Index 0 is reserved so that vertex
// ids line up with the row/column indices of augmented (n+1)x(n+1) matrices.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);
  Graph(int n, const std::vector<Edge>& edges);

  int num_vertices() const { return n_; }
  int num_edges() const { return num_edges_; }
  double density() const;

  bool adjacent(Vertex i, Vertex j) const { return adj_[static_cast<std::size_t>(i) * (n_ + 1) + j] != 0; }
  const std::vector<Vertex>& neighbors(Vertex v) const { return nbrs_[v]; }
  int degree(Vertex v) const { return static_cast<int>(nbrs_[v].size()); }

  // Returns false when the edge already existed. Throws on self-loops and
  // out-of-range ids.
  bool add_edge(Vertex i, Vertex j);

  // Edges as (i, j) with i < j, lexicographically sorted.
  std::vector<Edge> edges() const;

  std::string name;

 private:
  int n_ = 0;
  int num_edges_ = 0;
  std::vector<std::uint8_t> adj_;
  std::vector<std::vector<Vertex>> nbrs_;
};

struct ParseResult {
  Graph graph;
  std::vector<std::string> warnings;
};

ParseResult parse_dimacs(std::istream& in);
ParseResult parse_dimacs(const std::string& text);
ParseResult load_dimacs(const std::string& path);

Graph complement(const Graph& g);

struct Clique {
  std::vector<Vertex> vertices;  // sorted
  bool maximal = false;
};

// Chordless 5-cycle, stored in canonical order: vertices[0] is the smallest id
// and vertices[1] < vertices[4].
struct Hole5 {
  std::array<Vertex, 5> vertices{};
};

struct CliqueEnumeration {
  std::vector<Clique> maximal;  // maximal cliques of size 2..5
  std::vector<Clique> size6;    // all cliques of size exactly 6
  bool complete = true;
};

CliqueEnumeration enumerate_cliques(const Graph& g, double time_limit_s);

struct HoleEnumeration {
  std::vector<Hole5> holes;
  bool complete = true;
};

HoleEnumeration enumerate_5holes(const Graph& g, double time_limit_s);

// Grows q one vertex at a time, always taking the common neighbour i of the
// current clique (i != ell) with the largest weight(i); ties go to the smaller
// id. Stops when no common neighbour is left.
Clique extend_clique_greedy(const Graph& g, const Clique& q, Vertex ell,
                            const std::function<double(Vertex)>& weight);

bool is_clique(const Graph& g, const std::vector<Vertex>& vs);
bool is_hole5(const Graph& g, const Hole5& h);

}  // namespace mkcs
