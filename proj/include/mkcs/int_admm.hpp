#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mkcs/graph.hpp"
#include "mkcs/linalg.hpp"

namespace mkcs {

struct IntAdmmParams {
  double beta0 = 0.05;
  double beta_incr = 1.0001;
  double beta_decr = 0.5;
  double beta_min = 0.001;
  double eps_int = 1e-3;
  int max_tries_without_impr = 3;
  int min_iters_after_reset = 10;
  long max_iter = 60000;
  double time_limit = 3600.0;
  bool fix_corner = true;
  // Every trace_every-th iteration is traced in addition to convergence
  // events; 0 traces events only.
  int trace_every = 100;
  bool record_timings = true;
  // Accepted for interface symmetry; the iteration itself draws no random numbers.
  std::uint64_t seed = 0;

  void validate() const;
};

struct Coloring {
  std::vector<int> color;  // per vertex, index 0 unused, 0 = uncolored, else 1..k
  int value = 0;

  int num_vertices() const { return color.empty() ? 0 : static_cast<int>(color.size()) - 1; }
  bool is_feasible(const Graph& g, int k) const;
  // {"value": v, "colors": {"<vertex>": color, ...}} listing colored vertices only.
  std::string to_json() const;
};

struct Infeasible {
  char condition = 'a';  // first violated condition, 'a'..'f'
  std::string reason;
};

using RoundResult = std::variant<Coloring, Infeasible>;

// Rounds every entry of the vertex block (and border) to the nearest integer,
// clamps to {0,1}, then checks in order: (a) edges are zero, (b) symmetry,
// (c) X_ij = 1 forces X_ii = X_jj = 1, (d) transitivity, (e) at most k
// classes, (f) no edge inside a class.
RoundResult round_and_verify(const AugmentedMatrix& x, const Graph& g, int k);
RoundResult round_and_verify(const Eigen::MatrixXd& x, const Graph& g, int k);

// Projection onto the sphere of radius (n+1)/2 around C = J/2 + k E00. With
// fix_corner the (0,0) entry is pinned to k as well.
AugmentedMatrix project_sphere(const AugmentedMatrix& a, int k, bool fix_corner);

struct IntTraceRecord {
  long t = 0;
  double beta = 0.0;
  double primal_res_y = 0.0;
  double primal_res_z = 0.0;
  bool converged_event = false;
  int feasible_value = -1;  // -1 when no rounding happened or it failed

  std::string to_json() const;
};

enum class IntStop { UpperBoundMatched, NoImprovement, IterationCap, TimeLimit };
const char* int_stop_name(IntStop s);

struct IntAdmmResult {
  std::optional<Coloring> best;  // nullopt when no rounding was ever feasible
  std::vector<IntTraceRecord> trace;
  long iterations = 0;
  int convergence_events = 0;
  int infeasible_roundings = 0;
  IntStop stop = IntStop::IterationCap;
  double elapsed_s = 0.0;
  int first_value = -1;  // value of the first feasible rounding
};

// warm defaults to the cutting-plane initial point; known_ub < 0 disables the
// optimality check.
IntAdmmResult int_admm(const Graph& g, int k, const IntAdmmParams& params,
                       const std::optional<AugmentedMatrix>& warm, double known_ub);

}  // namespace mkcs
