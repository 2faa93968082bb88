#include "mkcs/graph.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <sstream>

namespace mkcs {

Graph::Graph(int n) : n_(n) {
  if (n < 0) throw InvalidArgument("graph: negative vertex count");
  adj_.assign(static_cast<std::size_t>(n + 1) * (n + 1), 0);
  nbrs_.resize(n + 1);
}

Graph::Graph(int n, const std::vector<Edge>& edges) : Graph(n) {
  for (const auto& [i, j] : edges) add_edge(i, j);
}

double Graph::density() const {
  if (n_ < 2) return 0.0;
  return static_cast<double>(num_edges_) / (0.5 * n_ * (n_ - 1));
}

bool Graph::add_edge(Vertex i, Vertex j) {
  if (i < 1 || j < 1 || i > n_ || j > n_) {
    throw InvalidArgument("graph: vertex index out of range in edge {" + std::to_string(i) + "," +
                          std::to_string(j) + "}");
  }
  if (i == j) throw InvalidArgument("graph: self-loop on vertex " + std::to_string(i));
  auto& a = adj_[static_cast<std::size_t>(i) * (n_ + 1) + j];
  if (a) return false;
  a = 1;
  adj_[static_cast<std::size_t>(j) * (n_ + 1) + i] = 1;
  nbrs_[i].insert(std::lower_bound(nbrs_[i].begin(), nbrs_[i].end(), j), j);
  nbrs_[j].insert(std::lower_bound(nbrs_[j].begin(), nbrs_[j].end(), i), i);
  ++num_edges_;
  return true;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges_);
  for (Vertex i = 1; i <= n_; ++i)
    for (Vertex j : nbrs_[i])
      if (j > i) out.emplace_back(i, j);
  return out;
}

ParseResult parse_dimacs(std::istream& in) {
  ParseResult result;
  bool have_problem = false;
  long declared_edges = 0;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "c") continue;
    if (tag == "p") {
      std::string format;
      long n = -1;
      if (have_problem) throw ParseError("dimacs: duplicate problem line at line " + std::to_string(line_no));
      if (!(ls >> format >> n >> declared_edges) || (format != "edge" && format != "col") || n < 0) {
        throw ParseError("dimacs: malformed problem line at line " + std::to_string(line_no));
      }
      result.graph = Graph(static_cast<int>(n));
      have_problem = true;
    } else if (tag == "e") {
      if (!have_problem) throw ParseError("dimacs: edge before problem line at line " + std::to_string(line_no));
      long i = 0, j = 0;
      if (!(ls >> i >> j)) throw ParseError("dimacs: malformed edge line at line " + std::to_string(line_no));
      const int n = result.graph.num_vertices();
      if (i < 1 || j < 1 || i > n || j > n) {
        throw ParseError("dimacs: vertex index out of range at line " + std::to_string(line_no));
      }
      if (i == j) throw ParseError("dimacs: self-loop at line " + std::to_string(line_no));
      result.graph.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
    } else {
      throw ParseError("dimacs: unknown line type '" + tag + "' at line " + std::to_string(line_no));
    }
  }
  if (!have_problem) throw ParseError("dimacs: missing problem line");
  if (declared_edges != result.graph.num_edges()) {
    result.warnings.push_back("dimacs: problem line declares " + std::to_string(declared_edges) +
                              " edges, found " + std::to_string(result.graph.num_edges()) +
                              " distinct edges");
  }
  return result;
}

ParseResult parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  return parse_dimacs(in);
}

ParseResult load_dimacs(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("dimacs: cannot open '" + path + "'");
  auto result = parse_dimacs(in);
  auto slash = path.find_last_of('/');
  std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
  auto dot = base.find_last_of('.');
  result.graph.name = dot == std::string::npos ? base : base.substr(0, dot);
  return result;
}

Graph complement(const Graph& g) {
  const int n = g.num_vertices();
  Graph h(n);
  for (Vertex i = 1; i <= n; ++i)
    for (Vertex j = i + 1; j <= n; ++j)
      if (!g.adjacent(i, j)) h.add_edge(i, j);
  h.name = g.name.empty() ? std::string() : g.name + "c";
  return h;
}

bool is_clique(const Graph& g, const std::vector<Vertex>& vs) {
  for (std::size_t a = 0; a < vs.size(); ++a)
    for (std::size_t b = a + 1; b < vs.size(); ++b)
      if (!g.adjacent(vs[a], vs[b])) return false;
  return true;
}

bool is_hole5(const Graph& g, const Hole5& h) {
  const auto& v = h.vertices;
  for (int a = 0; a < 5; ++a) {
    if (!g.adjacent(v[a], v[(a + 1) % 5])) return false;
    if (g.adjacent(v[a], v[(a + 2) % 5])) return false;
  }
  return true;
}

namespace {

using Clock = std::chrono::steady_clock;

class Deadline {
 public:
  explicit Deadline(double seconds)
      : end_(Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(seconds))) {}
  // Clock reads are cheap but not free; poll every 1024 calls.
  bool expired() {
    if ((++calls_ & 1023u) != 0) return false;
    return Clock::now() >= end_;
  }

 private:
  Clock::time_point end_;
  unsigned calls_ = 0;
};

// Bron-Kerbosch without pivoting, capped at depth 6. Pivoting would skip
// non-maximal 6-subsets of larger cliques, which are needed here.
struct CliqueSearch {
  const Graph& g;
  Deadline deadline;
  CliqueEnumeration out;
  std::vector<Vertex> r;

  void run(std::vector<Vertex> p, std::vector<Vertex> x) {
    if (!out.complete) return;
    if (deadline.expired()) {
      out.complete = false;
      return;
    }
    if (r.size() == 6) {
      out.size6.push_back({sorted(r), p.empty() && x.empty()});
      return;
    }
    if (p.empty()) {
      if (x.empty() && r.size() >= 2) out.maximal.push_back({sorted(r), true});
      return;
    }
    while (!p.empty()) {
      const Vertex v = p.front();
      std::vector<Vertex> np, nx;
      for (Vertex u : p)
        if (u != v && g.adjacent(u, v)) np.push_back(u);
      for (Vertex u : x)
        if (g.adjacent(u, v)) nx.push_back(u);
      r.push_back(v);
      run(std::move(np), std::move(nx));
      r.pop_back();
      if (!out.complete) return;
      p.erase(p.begin());
      x.push_back(v);
    }
  }

  static std::vector<Vertex> sorted(std::vector<Vertex> v) {
    std::sort(v.begin(), v.end());
    return v;
  }
};

}  // namespace

CliqueEnumeration enumerate_cliques(const Graph& g, double time_limit_s) {
  CliqueSearch search{g, Deadline(time_limit_s), {}, {}};
  std::vector<Vertex> all(g.num_vertices());
  for (int i = 0; i < g.num_vertices(); ++i) all[i] = i + 1;
  search.run(std::move(all), {});
  return std::move(search.out);
}

HoleEnumeration enumerate_5holes(const Graph& g, double time_limit_s) {
  HoleEnumeration out;
  Deadline deadline(time_limit_s);
  const int n = g.num_vertices();
  // Path v0-v1-v2-v3-v4 closed by {v4,v0}; v0 is the least id, v1 < v4.
  for (Vertex v0 = 1; v0 <= n; ++v0) {
    for (Vertex v1 : g.neighbors(v0)) {
      if (v1 <= v0) continue;
      for (Vertex v2 : g.neighbors(v1)) {
        if (v2 <= v0 || g.adjacent(v2, v0)) continue;
        for (Vertex v3 : g.neighbors(v2)) {
          if (v3 <= v0 || v3 == v1 || g.adjacent(v3, v0) || g.adjacent(v3, v1)) continue;
          if (deadline.expired()) {
            out.complete = false;
            return out;
          }
          for (Vertex v4 : g.neighbors(v3)) {
            if (v4 <= v1 || v4 == v2) continue;
            if (!g.adjacent(v4, v0) || g.adjacent(v4, v1) || g.adjacent(v4, v2)) continue;
            out.holes.push_back({{v0, v1, v2, v3, v4}});
          }
        }
      }
    }
  }
  return out;
}

Clique extend_clique_greedy(const Graph& g, const Clique& q, Vertex ell,
                            const std::function<double(Vertex)>& weight) {
  std::vector<Vertex> members = q.vertices;
  std::vector<Vertex> candidates;
  if (!members.empty()) {
    for (Vertex u : g.neighbors(members.front())) {
      if (u == ell || std::find(members.begin(), members.end(), u) != members.end()) continue;
      bool common = true;
      for (Vertex m : members) common = common && g.adjacent(u, m);
      if (common) candidates.push_back(u);
    }
  }
  while (!candidates.empty()) {
    // candidates stay sorted by id, so strict '>' keeps the smallest id on ties
    std::size_t best = 0;
    double best_w = weight(candidates[0]);
    for (std::size_t c = 1; c < candidates.size(); ++c) {
      const double w = weight(candidates[c]);
      if (w > best_w) {
        best = c;
        best_w = w;
      }
    }
    const Vertex pick = candidates[best];
    members.push_back(pick);
    std::vector<Vertex> next;
    for (Vertex u : candidates)
      if (u != pick && g.adjacent(u, pick)) next.push_back(u);
    candidates.swap(next);
  }
  std::sort(members.begin(), members.end());
  bool maximal = true;
  if (!members.empty()) {
    for (Vertex u : g.neighbors(members.front())) {
      if (std::find(members.begin(), members.end(), u) != members.end()) continue;
      bool common = true;
      for (Vertex m : members) common = common && g.adjacent(u, m);
      if (common) maximal = false;  // only ell can remain
    }
  }
  return {members, maximal};
}

}  // namespace mkcs
