#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mkcs/cuts.hpp"
#include "mkcs/graph.hpp"
#include "mkcs/linalg.hpp"
#include "mkcs/projection.hpp"

namespace mkcs {

enum class BoundMode {
  BoxOnly,     // closed-form maximum over the cut-free affine set
  Lagrangian,  // box maximum with cut multipliers priced in (LP weak duality)
  Lp,          // exact LP through AdmmParams::lp_solver
};

const char* bound_mode_name(BoundMode m);

// Maximizes c.x + constant over {x in [0,1]^m : cuts}. Returns nullopt when
// the backend cannot produce a certified value.
using LpSolver = std::function<std::optional<double>(const Eigen::VectorXd& c, double constant,
                                                     const std::vector<Cut>& cuts)>;

struct AdmmParams {
  double beta = 1.2;
  double gamma = 1.617;
  double eps_admm = 1e-4;
  double eps_admm_final = 1e-5;
  int max_inner_iter = 2000;
  int max_inner_iter_final = 10000;
  double min_viol = 1e-2;
  // Unset means the default formula in n: n/4, n and 5n.
  std::optional<double> min_ineq;
  std::optional<double> min_ineq_phase1;
  std::optional<int> max_ineq;
  int max_cuts_per_var = 5;
  double min_impr = 0.025;
  double min_impr_phase1 = 0.25;
  double time_limit_global = 3600.0;
  double time_limit_cliques = 10.0;
  double time_limit_holes = 10.0;
  int max_cliques = 100000;
  long max_clique_pairs = 100000;
  int max_holes = 100000;
  double eps_dyk = 1e-2;
  int max_dyk_cycles = 100;
  int max_outer_iter = 1000;
  std::uint64_t seed = 0;

  BoundMode bound_mode = BoundMode::Lagrangian;
  LpSolver lp_solver;
  bool single_precision_eig = false;

  // Knobs of the chromatic-number driver.
  bool require_min_impr = true;
  bool stop_below_n = false;
  int early_bound_every = 0;  // 0 disables bounds inside the first outer iteration

  bool record_timings = true;

  double resolved_min_ineq(int n) const { return min_ineq.value_or(n / 4.0); }
  double resolved_min_ineq_phase1(int n) const { return min_ineq_phase1.value_or(static_cast<double>(n)); }
  int resolved_max_ineq(int n) const { return max_ineq.value_or(5 * n); }
  void validate() const;
};

struct AdmmState {
  AugmentedMatrix xbar;
  AugmentedMatrix y;
  AugmentedMatrix lambda;
  long iterations = 0;
  // Cut multipliers from the latest affine projection, scaled to the
  // objective (beta times the Dykstra step lengths).
  std::vector<double> cut_multipliers;

  static AdmmState initial(int n, int k);
};

struct InnerStats {
  int iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  bool converged = false;
  bool stopped_by_hook = false;
};

// Called every iteration; returning true ends the inner loop.
using InnerHook = std::function<bool(const AdmmState&, int iteration)>;

InnerStats inner_admm(AdmmState& state, const FreeIndexMap& map, const std::vector<Cut>& cuts,
                      const std::vector<std::vector<int>>& clusters, int k, const AdmmParams& params,
                      bool tightened, const InnerHook& hook = {});

struct BoundResult {
  double value = 0.0;
  BoundMode mode_used = BoundMode::BoxOnly;
  std::string notice;
};

// Weak-duality bound from any dual iterate: max <Ibar - P_nsd(lambda), Xbar>
// over the affine set (relaxed according to the mode). Always a valid upper
// bound on alpha_k. multiplier_hint seeds the Lagrangian mode.
BoundResult valid_upper_bound(const AugmentedMatrix& lambda, const std::vector<Cut>& cuts, const FreeIndexMap& map,
                              int k, BoundMode mode, const std::vector<double>& multiplier_hint = {},
                              const LpSolver& lp = {}, SpectralOptions spectral = {});

// Lagrangian LP bound for fixed objective and multipliers, after coordinate
// descent on the multipliers. Exposed for testing.
double lagrangian_box_bound(const Eigen::VectorXd& c, double constant, const std::vector<Cut>& cuts,
                            std::vector<double> multipliers, int sweeps = 50);

enum class StopReason { LowerBoundMatched, SmallImprovement, FewViolated, TimeLimit, BelowN, MaxOuter };
const char* stop_reason_name(StopReason r);

struct CpTraceRecord {
  int outer = 0;
  int inner_iters = 0;
  double ub = 0.0;
  int n_cuts_added = 0;
  int n_cuts_total = 0;
  int phase = 1;
  double elapsed_s = 0.0;
  bool final_pass = false;

  std::string to_json() const;
};

struct CpAdmmStats {
  int outer_iterations = 0;
  long inner_iterations = 0;        // excluding the tightened final pass
  long final_pass_iterations = 0;
  std::array<int, kNumCutFamilies> cuts_by_family{};
  int cuts_total = 0;
  int num_cliques = 0;
  int num_holes = 0;
  bool cliques_truncated = false;
  bool holes_truncated = false;
  double first_bound = 0.0;  // bound after the first inner solve (plain SDP)
  StopReason stop = StopReason::FewViolated;
  std::vector<std::string> notices;
  double elapsed_s = 0.0;
};

struct CpAdmmResult {
  double ub = 0.0;
  AugmentedMatrix xbar;
  std::vector<Cut> cuts;
  CpAdmmStats stats;
  std::vector<CpTraceRecord> trace;
};

struct StdAdmmResult {
  double ub = 0.0;
  long iterations = 0;
  bool converged = false;
  AugmentedMatrix xbar;
};

// Plain ADMM on the relaxation without cuts, followed by the valid bound.
// With tightened, the final-pass tolerance and cap are used.
StdAdmmResult std_admm(const Graph& g, int k, const AdmmParams& params, bool tightened = false);

// lb_hint < 0 disables the lower-bound stopping test.
CpAdmmResult cp_admm(const Graph& g, int k, const AdmmParams& params, int lb_hint);

struct GreedyResult {
  int value = 0;
  std::vector<int> color;  // per vertex (index 0 unused), 0 = uncolored
};

GreedyResult greedy_lower_bound(const Graph& g, int k, std::uint64_t seed);

}  // namespace mkcs
