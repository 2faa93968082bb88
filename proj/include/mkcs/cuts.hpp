#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mkcs/graph.hpp"
#include "mkcs/linalg.hpp"

namespace mkcs {

// Declaration order is the tie-break priority used by select_cuts.
enum class CutFamily { T1 = 0, CliqueExt = 1, CliqueUnion = 2, Hole5 = 3, T2 = 4 };
inline constexpr int kNumCutFamilies = 5;

const char* family_name(CutFamily f);

// a . x <= rhs over the free-entry vector x. coeffs is sorted by index, has
// no zero coefficients and no repeated indices.
struct Cut {
  std::vector<std::pair<int, double>> coeffs;
  double rhs = 0.0;
  CutFamily family = CutFamily::T1;
  std::uint64_t id = 0;

  double lhs(const Eigen::VectorXd& x) const;
  double violation(const Eigen::VectorXd& x) const { return lhs(x) - rhs; }
  std::vector<int> support() const;
  std::string to_json() const;
};

// Accumulates coefficients on matrix entries X_ij and drops entries fixed to
// zero by edges.
class CutBuilder {
 public:
  explicit CutBuilder(const FreeIndexMap& map) : map_(map) {}
  CutBuilder& add(Vertex i, Vertex j, double coef);
  Cut build(double rhs, CutFamily family, std::uint64_t id);

 private:
  const FreeIndexMap& map_;
  std::vector<std::pair<int, double>> terms_;
};

struct Candidate {
  Cut cut;
  double violation = 0.0;
};

struct SeparationReport {
  std::vector<Candidate> candidates;
  std::array<int, kNumCutFamilies> counts{};
  bool cliques_truncated = false;
  bool holes_truncated = false;

  void add(Cut cut, double violation);
  void merge(SeparationReport other);
  int count(CutFamily f) const { return counts[static_cast<int>(f)]; }
};

int kappa_rank(const Clique& q, int kappa);
int kappa_rank(const Hole5& h, int kappa);
// Closed form for an odd hole of the given length.
int kappa_rank_odd_hole(int length, int kappa);

// Pass min_viol = -infinity to emit every cut a separator can produce.
SeparationReport separate_triangle(const Graph& g, const FreeIndexMap& map, const Eigen::VectorXd& x, int k,
                                   double min_viol);

SeparationReport separate_clique_external(const Graph& g, const FreeIndexMap& map, const Eigen::VectorXd& x,
                                          const CliqueEnumeration& cliques, int k, double min_viol,
                                          int max_cliques, std::mt19937_64& rng);

SeparationReport separate_clique_union(const Graph& g, const FreeIndexMap& map, const Eigen::VectorXd& x,
                                       const CliqueEnumeration& cliques, int k, double min_viol,
                                       long max_clique_pairs, std::mt19937_64& rng);

SeparationReport separate_odd_hole(const Graph& g, const FreeIndexMap& map, const Eigen::VectorXd& x,
                                   const HoleEnumeration& holes, int k, double min_viol, int max_holes,
                                   std::mt19937_64& rng);

// Canonical key of (support, coefficients) used to reject duplicate cuts.
using CutKey = std::vector<std::pair<int, long long>>;
CutKey cut_key(const Cut& c);

struct SelectionLimits {
  int max_ineq = 0;
  int max_cuts_per_var = 5;
};

// Phase 1 keeps only CliqueExt candidates. Accepted cuts get their keys
// inserted into `existing`.
std::vector<Cut> select_cuts(const std::vector<SeparationReport>& reports, int phase, const SelectionLimits& limits,
                             std::set<CutKey>& existing);

// Greedy colouring of the overlap graph, largest supports first. Each returned
// cluster lists cut indices with pairwise-disjoint supports.
std::vector<std::vector<int>> cluster_cuts(const std::vector<Cut>& cuts);

}  // namespace mkcs
