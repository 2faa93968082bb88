#include "mkcs/cp_admm.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "json.hpp"

namespace mkcs {

const char* bound_mode_name(BoundMode m) {
  switch (m) {
    case BoundMode::BoxOnly: return "box_only";
    case BoundMode::Lagrangian: return "lagrangian";
    case BoundMode::Lp: return "lp";
  }
  return "?";
}

const char* stop_reason_name(StopReason r) {
  switch (r) {
    case StopReason::LowerBoundMatched: return "lower_bound_matched";
    case StopReason::SmallImprovement: return "small_improvement";
    case StopReason::FewViolated: return "few_violated";
    case StopReason::TimeLimit: return "time_limit";
    case StopReason::BelowN: return "below_n";
    case StopReason::MaxOuter: return "max_outer";
  }
  return "?";
}

void AdmmParams::validate() const {
  const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  if (!(beta > 0)) throw InvalidArgument("beta must be positive");
  if (!(gamma > 0 && gamma < golden)) throw InvalidArgument("gamma must lie in (0, (1+sqrt 5)/2)");
  if (!(eps_admm > 0) || !(eps_admm_final > 0)) throw InvalidArgument("eps_admm must be positive");
  if (max_inner_iter < 1 || max_inner_iter_final < 1) throw InvalidArgument("maxInnerIter must be positive");
  if (!(eps_dyk > 0)) throw InvalidArgument("eps_dyk must be positive");
  if (max_cuts_per_var < 1) throw InvalidArgument("maxCutsPerVar must be positive");
  if (!(time_limit_global > 0)) throw InvalidArgument("timeLimitGlobal must be positive");
}

AdmmState AdmmState::initial(int n, int k) {
  AdmmState s;
  s.xbar = AugmentedMatrix::initial_point(n, k);
  s.y = s.xbar;
  s.lambda = AugmentedMatrix(n);
  return s;
}

InnerStats inner_admm(AdmmState& state, const FreeIndexMap& map, const std::vector<Cut>& cuts,
                      const std::vector<std::vector<int>>& clusters, int k, const AdmmParams& params,
                      bool tightened, const InnerHook& hook) {
  const double eps = tightened ? params.eps_admm_final : params.eps_admm;
  const int cap = tightened ? params.max_inner_iter_final : params.max_inner_iter;
  const double beta = params.beta;
  const int n = map.num_vertices();
  const Eigen::MatrixXd ibar = AugmentedMatrix::objective(n).dense();
  const SpectralOptions spectral{params.single_precision_eig};
  const DykstraOptions dyk{params.eps_dyk, params.max_dyk_cycles};

  InnerStats stats;
  while (stats.iterations < cap) {
    const AugmentedMatrix target(state.y.dense() + (ibar - state.lambda.dense()) / beta);
    AffineProjection proj = project_affine_set(target, map, cuts, clusters, k, dyk);
    const Eigen::MatrixXd x_prev = state.xbar.dense();
    state.xbar = std::move(proj.matrix);
    state.cut_multipliers.assign(proj.multipliers.size(), 0.0);
    for (std::size_t i = 0; i < proj.multipliers.size(); ++i) state.cut_multipliers[i] = beta * proj.multipliers[i];

    state.y = project_psd(AugmentedMatrix(state.xbar.dense() + state.lambda.dense() / beta), spectral);
    state.lambda = AugmentedMatrix(state.lambda.dense() + params.gamma * beta * (state.xbar.dense() - state.y.dense()));
    if (!state.lambda.dense().allFinite() || !state.xbar.dense().allFinite()) {
      throw std::runtime_error("inner ADMM: non-finite iterate at iteration " + std::to_string(state.iterations));
    }
    ++state.iterations;
    ++stats.iterations;

    const double xnorm = state.xbar.frobenius_norm();
    stats.primal_residual = (state.xbar.dense() - state.y.dense()).norm() / (1.0 + xnorm);
    stats.dual_residual = beta * (state.xbar.dense() - x_prev).norm() / (1.0 + xnorm);
    if (std::max(stats.primal_residual, stats.dual_residual) <= eps) {
      stats.converged = true;
      break;
    }
    if (hook && hook(state, stats.iterations)) {
      stats.stopped_by_hook = true;
      break;
    }
  }
  return stats;
}

double lagrangian_box_bound(const Eigen::VectorXd& c, double constant, const std::vector<Cut>& cuts,
                            std::vector<double> multipliers, int sweeps) {
  multipliers.resize(cuts.size(), 0.0);
  for (double& mu : multipliers) mu = std::max(0.0, mu);
  Eigen::VectorXd r = c;
  for (std::size_t i = 0; i < cuts.size(); ++i)
    for (const auto& [p, a] : cuts[i].coeffs) r(p) -= multipliers[i] * a;

  auto total = [&]() {
    double v = constant + r.cwiseMax(0.0).sum();
    for (std::size_t i = 0; i < cuts.size(); ++i) v += multipliers[i] * cuts[i].rhs;
    return v;
  };

  double current = total();
  std::vector<double> base, points;
  for (int sweep = 0; sweep < sweeps; ++sweep) {
    const double before = current;
    for (std::size_t i = 0; i < cuts.size(); ++i) {
      const Cut& cut = cuts[i];
      const double mu = multipliers[i];
      base.resize(cut.coeffs.size());
      points.assign(1, 0.0);
      for (std::size_t t = 0; t < cut.coeffs.size(); ++t) {
        const auto& [p, a] = cut.coeffs[t];
        base[t] = r(p) + mu * a;
        const double bp = base[t] / a;
        if (bp > 0.0) points.push_back(bp);
      }
      // Piecewise-linear and convex in this multiplier: the minimum sits at 0
      // or at a breakpoint.
      auto local = [&](double t) {
        double v = t * cut.rhs;
        for (std::size_t s = 0; s < cut.coeffs.size(); ++s) v += std::max(0.0, base[s] - t * cut.coeffs[s].second);
        return v;
      };
      double best_t = mu, best_v = local(mu);
      for (double t : points) {
        const double v = local(t);
        if (v < best_v - 1e-15) {
          best_v = v;
          best_t = t;
        }
      }
      if (best_t != mu) {
        multipliers[i] = best_t;
        for (std::size_t t = 0; t < cut.coeffs.size(); ++t) {
          const auto& [p, a] = cut.coeffs[t];
          r(p) = base[t] - best_t * a;
        }
      }
    }
    current = total();
    if (before - current < 1e-10) break;
  }
  return total();
}

BoundResult valid_upper_bound(const AugmentedMatrix& lambda, const std::vector<Cut>& cuts, const FreeIndexMap& map,
                              int k, BoundMode mode, const std::vector<double>& multiplier_hint, const LpSolver& lp,
                              SpectralOptions spectral) {
  const int n = map.num_vertices();
  const AugmentedMatrix nsd = project_nsd(lambda, spectral);
  const AugmentedMatrix cmat(AugmentedMatrix::objective(n).dense() - nsd.dense());
  // Objective over the free-entry vector: weight times the vectorized matrix.
  Eigen::VectorXd c = mat_to_vec(cmat, map);
  for (int p = 0; p < map.size(); ++p) c(p) *= map.weights()[p];
  const double constant = k * cmat(0, 0);
  const double box_value = constant + c.cwiseMax(0.0).sum();

  BoundResult out;
  out.value = box_value;
  out.mode_used = BoundMode::BoxOnly;
  if (cuts.empty() || mode == BoundMode::BoxOnly) return out;

  if (mode == BoundMode::Lp) {
    if (!lp) {
      out.notice = "lp bound requested without an LP backend; using the box-only bound";
      return out;
    }
    if (auto v = lp(c, constant, cuts)) {
      out.value = std::min(box_value, *v);
      out.mode_used = BoundMode::Lp;
    } else {
      out.notice = "LP backend returned no value; using the box-only bound";
    }
    return out;
  }

  const double lag = lagrangian_box_bound(c, constant, cuts, multiplier_hint);
  out.value = std::min(box_value, lag);
  out.mode_used = BoundMode::Lagrangian;
  return out;
}

std::string CpTraceRecord::to_json() const {
  nlohmann::ordered_json j;
  j["outer"] = outer;
  j["inner_iters"] = inner_iters;
  j["ub"] = ub;
  j["n_cuts_added"] = n_cuts_added;
  j["n_cuts_total"] = n_cuts_total;
  j["phase"] = phase;
  j["elapsed_s"] = elapsed_s;
  j["final_pass"] = final_pass;
  return j.dump();
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int count_new(const SeparationReport& r, const std::set<CutKey>& existing, bool clique_ext_only) {
  int cnt = 0;
  for (const auto& c : r.candidates) {
    if (clique_ext_only && c.cut.family != CutFamily::CliqueExt) continue;
    if (!existing.count(cut_key(c.cut))) ++cnt;
  }
  return cnt;
}

}  // namespace

CpAdmmResult cp_admm(const Graph& g, int k, const AdmmParams& params, int lb_hint) {
  params.validate();
  const int n = g.num_vertices();
  if (n < 2 || k < 1 || k > n - 1) throw InvalidArgument("cp_admm: k must lie in [1, n-1]");
  const auto start = Clock::now();
  auto elapsed = [&]() { return params.record_timings ? seconds_since(start) : 0.0; };
  auto out_of_time = [&]() { return seconds_since(start) >= params.time_limit_global; };

  const FreeIndexMap map(g);
  const CliqueEnumeration cliques = enumerate_cliques(g, params.time_limit_cliques);
  const HoleEnumeration holes = enumerate_5holes(g, params.time_limit_holes);
  std::mt19937_64 rng(params.seed);
  const SpectralOptions spectral{params.single_precision_eig};

  CpAdmmResult res;
  CpAdmmStats& st = res.stats;
  st.num_cliques = static_cast<int>(cliques.maximal.size() + cliques.size6.size());
  st.num_holes = static_cast<int>(holes.holes.size());
  st.cliques_truncated = !cliques.complete;
  st.holes_truncated = !holes.complete;

  AdmmState state = AdmmState::initial(n, k);
  std::vector<Cut> cuts;
  std::vector<std::vector<int>> clusters;
  std::set<CutKey> existing;
  double best = std::numeric_limits<double>::infinity();
  double prev_best = best;
  int phase = 1;
  const double n_minus = n - 1e-6;

  auto bound_now = [&]() {
    BoundResult b = valid_upper_bound(state.lambda, cuts, map, k, params.bound_mode, state.cut_multipliers,
                                      params.lp_solver, spectral);
    if (!b.notice.empty() &&
        std::find(st.notices.begin(), st.notices.end(), b.notice) == st.notices.end()) {
      st.notices.push_back(b.notice);
    }
    return b.value;
  };
  auto matched_lb = [&]() { return lb_hint >= 0 && std::floor(best + 1e-6) <= lb_hint; };

  auto final_pass = [&](int outer) {
    InnerStats fin = inner_admm(state, map, cuts, clusters, k, params, true);
    st.final_pass_iterations += fin.iterations;
    best = std::min(best, bound_now());
    res.trace.push_back({outer, fin.iterations, best, 0, static_cast<int>(cuts.size()), phase, elapsed(), true});
  };

  for (int outer = 1;; ++outer) {
    st.outer_iterations = outer;
    InnerHook hook;
    bool early_stop = false;
    if (outer == 1 && params.early_bound_every > 0) {
      hook = [&](const AdmmState&, int it) {
        if (it % params.early_bound_every != 0) return false;
        best = std::min(best, bound_now());
        if ((params.stop_below_n && best < n_minus) || matched_lb()) early_stop = true;
        return early_stop || out_of_time();
      };
    }
    InnerStats inner = inner_admm(state, map, cuts, clusters, k, params, false, hook);
    st.inner_iterations += inner.iterations;
    best = std::min(best, bound_now());
    if (outer == 1) st.first_bound = best;
    const double impr = std::isinf(prev_best) ? std::numeric_limits<double>::infinity() : prev_best - best;
    prev_best = best;
    res.trace.push_back({outer, inner.iterations, best, 0, static_cast<int>(cuts.size()), phase, elapsed(), false});

    if (matched_lb()) {
      st.stop = StopReason::LowerBoundMatched;
      break;
    }
    if (params.stop_below_n && best < n_minus) {
      st.stop = StopReason::BelowN;
      break;
    }
    if (out_of_time()) {
      st.stop = StopReason::TimeLimit;
      break;
    }

    const Eigen::VectorXd x = mat_to_vec(state.xbar, map);
    std::vector<SeparationReport> reports;
    reports.push_back(separate_clique_external(g, map, x, cliques, k, params.min_viol, params.max_cliques, rng));
    bool switched = false;
    if (phase == 1 && (impr < params.min_impr_phase1 ||
                       count_new(reports[0], existing, true) < params.resolved_min_ineq_phase1(n))) {
      phase = 2;
      switched = true;
    }
    if (phase == 2) {
      reports.push_back(separate_triangle(g, map, x, k, params.min_viol));
      reports.push_back(separate_clique_union(g, map, x, cliques, k, params.min_viol, params.max_clique_pairs, rng));
      reports.push_back(separate_odd_hole(g, map, x, holes, k, params.min_viol, params.max_holes, rng));
      int violated = 0;
      for (const auto& r : reports) violated += count_new(r, existing, false);
      const bool small_impr = params.require_min_impr && !switched && impr < params.min_impr;
      if (small_impr || violated < params.resolved_min_ineq(n)) {
        st.stop = small_impr ? StopReason::SmallImprovement : StopReason::FewViolated;
        final_pass(outer);
        break;
      }
    }
    if (outer >= params.max_outer_iter) {
      st.stop = StopReason::MaxOuter;
      final_pass(outer);
      break;
    }

    std::vector<Cut> added = select_cuts(reports, phase, {params.resolved_max_ineq(n), params.max_cuts_per_var},
                                         existing);
    for (auto& c : added) {
      c.id = cuts.size();
      ++st.cuts_by_family[static_cast<int>(c.family)];
      cuts.push_back(std::move(c));
    }
    res.trace.back().n_cuts_added = static_cast<int>(added.size());
    res.trace.back().n_cuts_total = static_cast<int>(cuts.size());
    clusters = cluster_cuts(cuts);
  }

  st.cuts_total = static_cast<int>(cuts.size());
  st.elapsed_s = elapsed();
  res.ub = best;
  res.xbar = state.xbar;
  res.cuts = std::move(cuts);
  return res;
}

StdAdmmResult std_admm(const Graph& g, int k, const AdmmParams& params, bool tightened) {
  params.validate();
  const int n = g.num_vertices();
  if (n < 1 || k < 1) throw InvalidArgument("std_admm: need n >= 1 and k >= 1");
  const FreeIndexMap map(g);
  AdmmState state = AdmmState::initial(n, k);
  const InnerStats inner = inner_admm(state, map, {}, {}, k, params, tightened);
  StdAdmmResult out;
  out.ub = valid_upper_bound(state.lambda, {}, map, k, BoundMode::BoxOnly, {}, {},
                             SpectralOptions{params.single_precision_eig})
               .value;
  out.iterations = inner.iterations;
  out.converged = inner.converged;
  out.xbar = state.xbar;
  return out;
}

GreedyResult greedy_lower_bound(const Graph& g, int k, std::uint64_t seed) {
  const int n = g.num_vertices();
  GreedyResult out;
  out.color.assign(n + 1, 0);
  std::mt19937_64 rng(seed);
  for (int c = 1; c <= k; ++c) {
    std::vector<Vertex> open;
    for (Vertex v = 1; v <= n; ++v)
      if (out.color[v] == 0) open.push_back(v);
    if (open.empty()) break;
    std::vector<int> deg(n + 1, 0);
    for (Vertex v : open)
      for (Vertex u : g.neighbors(v))
        if (out.color[u] == 0) ++deg[v];
    std::shuffle(open.begin(), open.end(), rng);
    std::stable_sort(open.begin(), open.end(), [&](Vertex a, Vertex b) { return deg[a] < deg[b]; });
    std::vector<char> blocked(n + 1, 0);
    for (Vertex v : open) {
      if (blocked[v]) continue;
      out.color[v] = c;
      ++out.value;
      for (Vertex u : g.neighbors(v)) blocked[u] = 1;
    }
  }
  return out;
}

}  // namespace mkcs
