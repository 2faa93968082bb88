#include "mkcs/int_admm.hpp"

#include <chrono>
#include <cmath>

#include "json.hpp"
#include "mkcs/projection.hpp"

namespace mkcs {

void IntAdmmParams::validate() const {
  if (!(beta0 > 0)) throw InvalidArgument("beta0 must be positive");
  if (!(beta_incr > 1)) throw InvalidArgument("beta_incr must exceed 1");
  if (!(beta_decr > 0 && beta_decr < 1)) throw InvalidArgument("beta_decr must lie in (0,1)");
  if (!(beta_min > 0)) throw InvalidArgument("beta_min must be positive");
  if (!(eps_int > 0)) throw InvalidArgument("eps_int must be positive");
  if (max_tries_without_impr < 1) throw InvalidArgument("maxTriesWithoutImpr must be positive");
  if (min_iters_after_reset < 0) throw InvalidArgument("min_iters_after_reset must be non-negative");
  if (max_iter < 1) throw InvalidArgument("max_iter must be positive");
}

bool Coloring::is_feasible(const Graph& g, int k) const {
  if (num_vertices() != g.num_vertices()) return false;
  int colored = 0;
  for (Vertex v = 1; v <= g.num_vertices(); ++v) {
    if (color[v] < 0 || color[v] > k) return false;
    if (color[v] > 0) ++colored;
  }
  for (const auto& [u, v] : g.edges())
    if (color[u] != 0 && color[u] == color[v]) return false;
  return colored == value;
}

std::string Coloring::to_json() const {
  nlohmann::ordered_json j;
  j["value"] = value;
  nlohmann::ordered_json colors = nlohmann::ordered_json::object();
  for (int v = 1; v < static_cast<int>(color.size()); ++v)
    if (color[v] > 0) colors[std::to_string(v)] = color[v];
  j["colors"] = colors;
  return j.dump();
}

RoundResult round_and_verify(const AugmentedMatrix& x, const Graph& g, int k) {
  return round_and_verify(x.dense(), g, k);
}

RoundResult round_and_verify(const Eigen::MatrixXd& x, const Graph& g, int k) {
  const int n = g.num_vertices();
  if (x.rows() != n + 1 || x.cols() != n + 1) throw InvalidArgument("round_and_verify: matrix order must be n+1");
  auto r = [&](int i, int j) { return std::clamp(std::nearbyint(x(i, j)), 0.0, 1.0) > 0.5; };
  auto fail = [](char c, std::string why) { return RoundResult(Infeasible{c, std::move(why)}); };
  auto pair_str = [](int i, int j) { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; };

  for (const auto& [u, v] : g.edges())
    if (r(u, v) || r(v, u)) return fail('a', "edge " + pair_str(u, v) + " is nonzero");
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (r(i, j) != r(j, i)) return fail('b', "entry " + pair_str(i, j) + " is not symmetric");
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (i != j && r(i, j) && !(r(i, i) && r(j, j)))
        return fail('c', "entry " + pair_str(i, j) + " is 1 with an uncolored endpoint");

  std::vector<int> rep(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    if (!r(i, i)) continue;
    for (int j = 1; j <= i; ++j)
      if (r(i, j)) {
        rep[i] = rep[j] == 0 ? j : rep[j];
        break;
      }
  }
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (rep[i] && rep[j] && r(i, j) != (rep[i] == rep[j]))
        return fail('d', "relation is not transitive at " + pair_str(i, j));

  Coloring out;
  out.color.assign(n + 1, 0);
  std::vector<int> class_of(n + 1, 0);
  int classes = 0;
  for (int i = 1; i <= n; ++i) {
    if (!rep[i]) continue;
    if (rep[i] == i) class_of[i] = ++classes;
    out.color[i] = class_of[rep[i]];
    ++out.value;
  }
  if (classes > k) return fail('e', std::to_string(classes) + " classes exceed k = " + std::to_string(k));
  for (const auto& [u, v] : g.edges())
    if (out.color[u] && out.color[u] == out.color[v]) return fail('f', "edge " + pair_str(u, v) + " inside a class");
  return out;
}

AugmentedMatrix project_sphere(const AugmentedMatrix& a, int k, bool fix_corner) {
  const int n = a.num_vertices();
  Eigen::MatrixXd c = Eigen::MatrixXd::Constant(n + 1, n + 1, 0.5);
  c(0, 0) += k;
  Eigen::MatrixXd z = a.dense();
  double radius = (n + 1) / 2.0;
  if (fix_corner) {
    z(0, 0) = 0.5 + k;
    radius = std::sqrt(static_cast<double>(n + 1) * (n + 1) - 1.0) / 2.0;
  }
  Eigen::MatrixXd d = z - c;
  double norm = d.norm();
  if (norm == 0.0) {
    // At the centre every direction is a projection; take the identity on the
    // vertex block.
    d.setZero();
    for (int i = 1; i <= n; ++i) d(i, i) = 1.0;
    norm = d.norm();
  }
  Eigen::MatrixXd out = (radius / norm) * d + c;
  if (fix_corner) out(0, 0) = k;
  return AugmentedMatrix(std::move(out));
}

std::string IntTraceRecord::to_json() const {
  nlohmann::ordered_json j;
  j["t"] = t;
  j["beta"] = beta;
  j["primal_res_Y"] = primal_res_y;
  j["primal_res_Z"] = primal_res_z;
  j["converged_event"] = converged_event;
  if (feasible_value >= 0)
    j["feasible_value"] = feasible_value;
  else
    j["feasible_value"] = nullptr;
  return j.dump();
}

const char* int_stop_name(IntStop s) {
  switch (s) {
    case IntStop::UpperBoundMatched: return "upper_bound_matched";
    case IntStop::NoImprovement: return "no_improvement";
    case IntStop::IterationCap: return "iteration_cap";
    case IntStop::TimeLimit: return "time_limit";
  }
  return "?";
}

IntAdmmResult int_admm(const Graph& g, int k, const IntAdmmParams& params,
                       const std::optional<AugmentedMatrix>& warm, double known_ub) {
  params.validate();
  const int n = g.num_vertices();
  if (n < 1 || k < 1) throw InvalidArgument("int_admm: need n >= 1 and k >= 1");
  if (warm && warm->num_vertices() != n) throw InvalidArgument("int_admm: warm start has the wrong order");
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  auto seconds = [&]() { return std::chrono::duration<double>(Clock::now() - start).count(); };

  const FreeIndexMap map(g);
  const Eigen::MatrixXd ibar = AugmentedMatrix::objective(n).dense();
  const AugmentedMatrix w = warm ? *warm : AugmentedMatrix::initial_point(n, k);
  auto project_x = [&](const AugmentedMatrix& a) { return project_affine_set(a, map, {}, {}, k).matrix; };

  double beta = params.beta0;
  AugmentedMatrix xbar = project_x(w);
  AugmentedMatrix y = project_psd(w);
  AugmentedMatrix z = project_sphere(w, k, params.fix_corner);
  Eigen::MatrixXd lambda = beta * (xbar.dense() - y.dense());
  Eigen::MatrixXd mu = beta * (xbar.dense() - z.dense());

  const long target = known_ub >= 0 ? static_cast<long>(std::floor(known_ub + 1e-6)) : -1;
  IntAdmmResult res;
  int tries = 0;
  long quiet_until = 0;
  bool done = false;
  for (long t = 1; t <= params.max_iter && !done; ++t) {
    xbar = project_x(AugmentedMatrix((beta * (y.dense() + z.dense()) + ibar - lambda - mu) / (2.0 * beta)));
    y = project_psd(AugmentedMatrix(xbar.dense() + lambda / beta));
    z = project_sphere(AugmentedMatrix(xbar.dense() + mu / beta), k, params.fix_corner);
    lambda += beta * (xbar.dense() - y.dense());
    mu += beta * (xbar.dense() - z.dense());
    if (!lambda.allFinite() || !mu.allFinite()) throw std::runtime_error("int_admm: non-finite iterate");
    res.iterations = t;
    const double beta_used = beta;
    beta *= params.beta_incr;

    const double scale = 1.0 + xbar.frobenius_norm();
    IntTraceRecord rec{t, beta_used, (xbar.dense() - y.dense()).norm() / scale, (xbar.dense() - z.dense()).norm() / scale,
                       false, -1};
    if (t > quiet_until && std::max(rec.primal_res_y, rec.primal_res_z) <= params.eps_int) {
      rec.converged_event = true;
      ++res.convergence_events;
      RoundResult rr = round_and_verify(xbar, g, k);
      bool improved = false;
      if (auto* col = std::get_if<Coloring>(&rr)) {
        rec.feasible_value = col->value;
        if (res.first_value < 0) res.first_value = col->value;
        if (!res.best || col->value > res.best->value) {
          res.best = *col;
          improved = true;
        }
      } else {
        ++res.infeasible_roundings;
      }
      tries = improved ? 0 : tries + 1;
      beta = std::max(beta * params.beta_decr, params.beta_min);
      quiet_until = t + params.min_iters_after_reset;
      if (res.best && target >= 0 && res.best->value >= target) {
        res.stop = IntStop::UpperBoundMatched;
        done = true;
      } else if (tries >= params.max_tries_without_impr) {
        res.stop = IntStop::NoImprovement;
        done = true;
      }
    }
    if (rec.converged_event || (params.trace_every > 0 && t % params.trace_every == 0)) res.trace.push_back(rec);
    if (!done && seconds() >= params.time_limit) {
      res.stop = IntStop::TimeLimit;
      done = true;
    }
  }
  res.elapsed_s = params.record_timings ? seconds() : 0.0;
  return res;
}

}  // namespace mkcs
