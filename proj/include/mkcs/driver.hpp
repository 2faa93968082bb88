#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "mkcs/cp_admm.hpp"
#include "mkcs/graph.hpp"
#include "mkcs/int_admm.hpp"

namespace mkcs {

enum class Mode { Bound, Solve, Chromatic, Oracle };
Mode parse_mode(const std::string& s);
const char* mode_name(Mode m);

struct RunConfig {
  Mode mode = Mode::Bound;
  std::vector<int> ks;
  AdmmParams cp;
  IntAdmmParams integer;
  std::uint64_t seed = 0;
  double time_limit = 3600.0;
  double per_k_budget = 600.0;
  std::string lp_backend = "lagrangian";  // none | lagrangian | external
  std::string lp_command;                 // external solver command; empty = bundled script
  bool record_timings = true;
  bool expensive_tests = false;
  int oracle_max_vertices = 40;

  // Sets one parameter by its flag name (without dashes), e.g.
  // "max-cuts-per-var". Throws InvalidArgument for unknown keys or bad values.
  void set(const std::string& key, const std::string& value);
  // Applies every key of a flat JSON object through set().
  void apply_json(const nlohmann::json& j);
  void load_json_file(const std::string& path);
  // Copies seed, timing and backend settings into the solver parameters and
  // checks them.
  void finalize();

  static const std::vector<std::string>& keys();
};

// Parses "4", "3,4,5" or "3-6".
std::vector<int> parse_k_list(const std::string& s);

struct Report {
  std::string graph;
  int n = 0;
  int m = 0;
  double density = 0.0;
  int k = 0;
  bool has_ub = false;
  double ub = 0.0;
  bool has_lb = false;
  int lb = 0;
  double time_ub = 0.0;
  double time_lb = 0.0;
  long inner_iters = 0;
  int outer_iters = 0;
  int cuts = 0;
  nlohmann::ordered_json json;
  std::vector<std::string> trace;  // JSON lines
};

Report run_bound(const Graph& g, const RunConfig& cfg, int k);
Report run_solve(const Graph& g, const RunConfig& cfg, int k);
Report run_oracle(const Graph& g, const RunConfig& cfg, int k);

struct ChromaticStep {
  int k = 0;
  double ub = 0.0;
  double elapsed_s = 0.0;
  int outer_iters = 0;
};

struct ChromaticResult {
  int lower_bound = 1;
  std::vector<ChromaticStep> steps;
  std::vector<std::string> trace;
};

// Modified cutting-plane stopping rules: minIneq 1, no minimum improvement,
// stop once a bound falls below n, bounds every 100 inner iterations in the
// first outer iteration.
ChromaticResult chromatic_lower_bound(const Graph& g, const RunConfig& cfg);
Report run_chromatic(const Graph& g, const RunConfig& cfg);

// Runs cfg.mode for every k in cfg.ks (chromatic ignores ks).
std::vector<Report> run(const Graph& g, const RunConfig& cfg);

std::string reports_csv(const std::vector<Report>& reports);
std::string reports_json(const std::vector<Report>& reports);
std::string reports_trace(const std::vector<Report>& reports);

// LP backend that hands the relaxation to an external command speaking the
// JSON protocol of tools/lp_highs.py.
LpSolver external_lp_solver(const std::string& command);

}  // namespace mkcs
