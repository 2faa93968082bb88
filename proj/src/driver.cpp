#include "mkcs/driver.hpp"

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "mkcs/oracle.hpp"

#ifndef MKCS_TOOLS_DIR
#define MKCS_TOOLS_DIR "tools"
#endif

namespace mkcs {

namespace {

double to_double(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double d = 0.0;
  try {
    d = std::stod(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != v.size() || !std::isfinite(d)) throw InvalidArgument(key + ": expected a number, got '" + v + "'");
  return d;
}

long to_long(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  long x = 0;
  try {
    x = std::stol(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != v.size()) throw InvalidArgument(key + ": expected an integer, got '" + v + "'");
  return x;
}

int to_int(const std::string& key, const std::string& v) {
  const long x = to_long(key, v);
  if (x < INT32_MIN || x > INT32_MAX) throw InvalidArgument(key + ": out of range");
  return static_cast<int>(x);
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw InvalidArgument(key + ": expected a boolean, got '" + v + "'");
}

using Setter = std::function<void(RunConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"beta", [](RunConfig& c, auto& k, auto& v) { c.cp.beta = to_double(k, v); }},
      {"gamma", [](RunConfig& c, auto& k, auto& v) { c.cp.gamma = to_double(k, v); }},
      {"eps-admm", [](RunConfig& c, auto& k, auto& v) { c.cp.eps_admm = to_double(k, v); }},
      {"eps-admm-final", [](RunConfig& c, auto& k, auto& v) { c.cp.eps_admm_final = to_double(k, v); }},
      {"eps-dyk", [](RunConfig& c, auto& k, auto& v) { c.cp.eps_dyk = to_double(k, v); }},
      {"max-inner-iter", [](RunConfig& c, auto& k, auto& v) { c.cp.max_inner_iter = to_int(k, v); }},
      {"max-inner-iter-final", [](RunConfig& c, auto& k, auto& v) { c.cp.max_inner_iter_final = to_int(k, v); }},
      {"min-viol", [](RunConfig& c, auto& k, auto& v) { c.cp.min_viol = to_double(k, v); }},
      {"min-ineq", [](RunConfig& c, auto& k, auto& v) { c.cp.min_ineq = to_double(k, v); }},
      {"min-ineq-phase1", [](RunConfig& c, auto& k, auto& v) { c.cp.min_ineq_phase1 = to_double(k, v); }},
      {"max-ineq", [](RunConfig& c, auto& k, auto& v) { c.cp.max_ineq = to_int(k, v); }},
      {"max-cuts-per-var", [](RunConfig& c, auto& k, auto& v) { c.cp.max_cuts_per_var = to_int(k, v); }},
      {"min-impr", [](RunConfig& c, auto& k, auto& v) { c.cp.min_impr = to_double(k, v); }},
      {"min-impr-phase1", [](RunConfig& c, auto& k, auto& v) { c.cp.min_impr_phase1 = to_double(k, v); }},
      {"time-limit-global", [](RunConfig& c, auto& k, auto& v) { c.cp.time_limit_global = to_double(k, v); }},
      {"time-limit-cliques", [](RunConfig& c, auto& k, auto& v) { c.cp.time_limit_cliques = to_double(k, v); }},
      {"time-limit-holes", [](RunConfig& c, auto& k, auto& v) { c.cp.time_limit_holes = to_double(k, v); }},
      {"max-cliques", [](RunConfig& c, auto& k, auto& v) { c.cp.max_cliques = to_int(k, v); }},
      {"max-clique-pairs", [](RunConfig& c, auto& k, auto& v) { c.cp.max_clique_pairs = to_long(k, v); }},
      {"max-holes", [](RunConfig& c, auto& k, auto& v) { c.cp.max_holes = to_int(k, v); }},
      {"max-dyk-cycles", [](RunConfig& c, auto& k, auto& v) { c.cp.max_dyk_cycles = to_int(k, v); }},
      {"max-outer-iter", [](RunConfig& c, auto& k, auto& v) { c.cp.max_outer_iter = to_int(k, v); }},
      {"single-precision-eig", [](RunConfig& c, auto& k, auto& v) { c.cp.single_precision_eig = to_bool(k, v); }},
      {"beta0", [](RunConfig& c, auto& k, auto& v) { c.integer.beta0 = to_double(k, v); }},
      {"beta-incr", [](RunConfig& c, auto& k, auto& v) { c.integer.beta_incr = to_double(k, v); }},
      {"beta-decr", [](RunConfig& c, auto& k, auto& v) { c.integer.beta_decr = to_double(k, v); }},
      {"beta-min", [](RunConfig& c, auto& k, auto& v) { c.integer.beta_min = to_double(k, v); }},
      {"eps-int-admm", [](RunConfig& c, auto& k, auto& v) { c.integer.eps_int = to_double(k, v); }},
      {"max-tries-without-impr",
       [](RunConfig& c, auto& k, auto& v) { c.integer.max_tries_without_impr = to_int(k, v); }},
      {"min-iters-after-reset", [](RunConfig& c, auto& k, auto& v) { c.integer.min_iters_after_reset = to_int(k, v); }},
      {"max-int-iter", [](RunConfig& c, auto& k, auto& v) { c.integer.max_iter = to_long(k, v); }},
      {"fix-corner", [](RunConfig& c, auto& k, auto& v) { c.integer.fix_corner = to_bool(k, v); }},
      {"k", [](RunConfig& c, auto&, auto& v) { c.ks = parse_k_list(v); }},
      {"seed",
       [](RunConfig& c, auto& k, auto& v) {
         const long s = to_long(k, v);
         if (s < 0) throw InvalidArgument("seed must be non-negative");
         c.seed = static_cast<std::uint64_t>(s);
       }},
      {"time-limit", [](RunConfig& c, auto& k, auto& v) { c.time_limit = to_double(k, v); }},
      {"per-k-budget", [](RunConfig& c, auto& k, auto& v) { c.per_k_budget = to_double(k, v); }},
      {"lp-backend",
       [](RunConfig& c, auto&, auto& v) {
         if (v != "none" && v != "lagrangian" && v != "external")
           throw InvalidArgument("lp-backend must be none, lagrangian or external");
         c.lp_backend = v;
       }},
      {"lp-command", [](RunConfig& c, auto&, auto& v) { c.lp_command = v; }},
      {"no-timing", [](RunConfig& c, auto& k, auto& v) { c.record_timings = !to_bool(k, v); }},
      {"expensive-tests", [](RunConfig& c, auto& k, auto& v) { c.expensive_tests = to_bool(k, v); }},
      {"oracle-max-vertices", [](RunConfig& c, auto& k, auto& v) { c.oracle_max_vertices = to_int(k, v); }},
  };
  return table;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

nlohmann::ordered_json graph_json(const Graph& g) {
  nlohmann::ordered_json j;
  j["name"] = g.name;
  j["n"] = g.num_vertices();
  j["m"] = g.num_edges();
  j["density"] = g.density();
  return j;
}

Report base_report(const Graph& g, Mode mode, int k) {
  Report r;
  r.graph = g.name;
  r.n = g.num_vertices();
  r.m = g.num_edges();
  r.density = g.density();
  r.k = k;
  r.json["mode"] = mode_name(mode);
  r.json["graph"] = graph_json(g);
  r.json["k"] = k;
  return r;
}

std::string tag_line(const std::string& line, const char* stage, int k) {
  nlohmann::ordered_json out;
  out["stage"] = stage;
  out["k"] = k;
  const auto parsed = nlohmann::ordered_json::parse(line);
  for (auto& [key, val] : parsed.items()) out[key] = val;
  return out.dump();
}

void check_k(const Graph& g, int k) {
  if (k < 1 || k > g.num_vertices() - 1)
    throw InvalidArgument("k = " + std::to_string(k) + " must lie in [1, " + std::to_string(g.num_vertices() - 1) + "]");
}

struct BoundRun {
  Report report;
  CpAdmmResult cp;
};

BoundRun bound_impl(const Graph& g, const RunConfig& cfg, int k, Mode mode) {
  check_k(g, k);
  BoundRun out{base_report(g, mode, k), {}};
  Report& r = out.report;
  const GreedyResult greedy = greedy_lower_bound(g, k, cfg.seed);
  AdmmParams p = cfg.cp;
  p.time_limit_global = std::min(p.time_limit_global, cfg.time_limit);
  out.cp = cp_admm(g, k, p, greedy.value);
  const CpAdmmResult& cp = out.cp;

  r.has_ub = true;
  r.ub = cp.ub;
  r.time_ub = cp.stats.elapsed_s;
  r.inner_iters = cp.stats.inner_iterations + cp.stats.final_pass_iterations;
  r.outer_iters = cp.stats.outer_iterations;
  r.cuts = cp.stats.cuts_total;

  nlohmann::ordered_json& j = r.json;
  j["ub"] = cp.ub;
  j["ub_floor"] = std::floor(cp.ub + 1e-6);
  j["first_bound"] = cp.stats.first_bound;
  j["lb_hint"] = greedy.value;
  j["bound_mode"] = bound_mode_name(p.bound_mode);
  j["outer_iters"] = cp.stats.outer_iterations;
  j["inner_iters"] = cp.stats.inner_iterations;
  j["final_pass_iters"] = cp.stats.final_pass_iterations;
  nlohmann::ordered_json cuts;
  cuts["total"] = cp.stats.cuts_total;
  for (int f = 0; f < kNumCutFamilies; ++f) cuts[family_name(static_cast<CutFamily>(f))] = cp.stats.cuts_by_family[f];
  j["cuts"] = cuts;
  j["num_cliques"] = cp.stats.num_cliques;
  j["num_holes"] = cp.stats.num_holes;
  j["cliques_truncated"] = cp.stats.cliques_truncated;
  j["holes_truncated"] = cp.stats.holes_truncated;
  j["stop"] = stop_reason_name(cp.stats.stop);
  j["notices"] = cp.stats.notices;
  j["time_ub"] = r.time_ub;
  for (const auto& t : cp.trace) r.trace.push_back(tag_line(t.to_json(), "cp", k));
  return out;
}

}  // namespace

Mode parse_mode(const std::string& s) {
  if (s == "bound") return Mode::Bound;
  if (s == "solve") return Mode::Solve;
  if (s == "chromatic") return Mode::Chromatic;
  if (s == "oracle") return Mode::Oracle;
  throw InvalidArgument("unknown mode '" + s + "'");
}

const char* mode_name(Mode m) {
  switch (m) {
    case Mode::Bound: return "bound";
    case Mode::Solve: return "solve";
    case Mode::Chromatic: return "chromatic";
    case Mode::Oracle: return "oracle";
  }
  return "?";
}

std::vector<int> parse_k_list(const std::string& s) {
  std::vector<int> ks;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw InvalidArgument("k: empty entry in '" + s + "'");
    const auto dash = item.find('-', 1);
    if (dash != std::string::npos) {
      const int lo = to_int("k", item.substr(0, dash));
      const int hi = to_int("k", item.substr(dash + 1));
      if (hi < lo) throw InvalidArgument("k: empty range '" + item + "'");
      for (int k = lo; k <= hi; ++k) ks.push_back(k);
    } else {
      ks.push_back(to_int("k", item));
    }
  }
  if (ks.empty()) throw InvalidArgument("k: no values given");
  return ks;
}

void RunConfig::set(const std::string& key, const std::string& value) {
  const auto& t = setters();
  auto it = t.find(key);
  if (it == t.end()) throw InvalidArgument("unknown parameter '" + key + "'");
  it->second(*this, key, value);
}

void RunConfig::apply_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidArgument("config must be a JSON object");
  for (auto& [key, val] : j.items()) {
    std::string v;
    if (val.is_string()) {
      v = val.get<std::string>();
    } else if (val.is_boolean()) {
      v = val.get<bool>() ? "true" : "false";
    } else if (val.is_number_integer() || val.is_number_unsigned()) {
      v = val.dump();
    } else if (val.is_number_float()) {
      v = fmt("%.17g", val.get<double>());
    } else if (val.is_array() && key == "k") {
      for (const auto& e : val) {
        if (!e.is_number_integer()) throw InvalidArgument("k: array entries must be integers");
        v += (v.empty() ? "" : ",") + e.dump();
      }
    } else {
      throw InvalidArgument("config value for '" + key + "' has an unsupported type");
    }
    set(key, v);
  }
}

void RunConfig::load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("config file '" + path + "': " + e.what());
  }
  apply_json(j);
}

void RunConfig::finalize() {
  cp.seed = seed;
  integer.seed = seed;
  cp.record_timings = record_timings;
  integer.record_timings = record_timings;
  if (lp_backend == "none") {
    cp.bound_mode = BoundMode::BoxOnly;
  } else if (lp_backend == "external") {
    cp.bound_mode = BoundMode::Lp;
    cp.lp_solver = external_lp_solver(lp_command);
  } else {
    cp.bound_mode = BoundMode::Lagrangian;
  }
  if (!(time_limit > 0)) throw InvalidArgument("time-limit must be positive");
  if (!(per_k_budget > 0)) throw InvalidArgument("per-k-budget must be positive");
  cp.validate();
  integer.validate();
}

const std::vector<std::string>& RunConfig::keys() {
  static const std::vector<std::string> ks = [] {
    std::vector<std::string> out;
    for (const auto& [k, _] : setters()) out.push_back(k);
    return out;
  }();
  return ks;
}

Report run_bound(const Graph& g, const RunConfig& cfg, int k) { return bound_impl(g, cfg, k, Mode::Bound).report; }

Report run_solve(const Graph& g, const RunConfig& cfg, int k) {
  BoundRun b = bound_impl(g, cfg, k, Mode::Solve);
  Report& r = b.report;
  IntAdmmParams ip = cfg.integer;
  ip.time_limit = std::min(ip.time_limit, cfg.time_limit);
  const IntAdmmResult res = int_admm(g, k, ip, b.cp.xbar, b.cp.ub);

  nlohmann::ordered_json& j = r.json;
  r.time_lb = res.elapsed_s;
  if (res.best) {
    r.has_lb = true;
    r.lb = res.best->value;
    j["lb"] = res.best->value;
    j["coloring"] = nlohmann::ordered_json::parse(res.best->to_json())["colors"];
    j["gap"] = r.ub - r.lb;
    j["optimal"] = std::floor(r.ub + 1e-6) == r.lb;
  } else {
    j["lb"] = nullptr;
    j["coloring"] = nullptr;
    j["gap"] = nullptr;
    j["optimal"] = false;
  }
  j["first_feasible"] = res.first_value >= 0 ? nlohmann::ordered_json(res.first_value) : nlohmann::ordered_json();
  j["int_iters"] = res.iterations;
  j["int_convergence_events"] = res.convergence_events;
  j["int_infeasible_roundings"] = res.infeasible_roundings;
  j["int_stop"] = int_stop_name(res.stop);
  j["time_lb"] = r.time_lb;
  for (const auto& t : res.trace) r.trace.push_back(tag_line(t.to_json(), "int", k));
  return r;
}

Report run_oracle(const Graph& g, const RunConfig& cfg, int k) {
  if (k < 1) throw InvalidArgument("k must be positive");
  Report r = base_report(g, Mode::Oracle, k);
  const int guard = cfg.expensive_tests ? std::max(cfg.oracle_max_vertices, 1000) : cfg.oracle_max_vertices;
  const auto start = std::chrono::steady_clock::now();
  const std::vector<int> w = alpha_k_witness(g, k, guard);
  int alpha = 0;
  nlohmann::ordered_json colors = nlohmann::ordered_json::object();
  for (int v = 1; v < static_cast<int>(w.size()); ++v)
    if (w[v]) {
      ++alpha;
      colors[std::to_string(v)] = w[v];
    }
  const double t =
      cfg.record_timings ? std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() : 0.0;
  r.has_ub = r.has_lb = true;
  r.ub = alpha;
  r.lb = alpha;
  r.time_ub = r.time_lb = t;
  r.json["alpha_k"] = alpha;
  r.json["coloring"] = colors;
  r.json["time"] = t;
  return r;
}

ChromaticResult chromatic_lower_bound(const Graph& g, const RunConfig& cfg) {
  const int n = g.num_vertices();
  ChromaticResult out;
  if (n <= 1) {
    out.lower_bound = n;
    return out;
  }
  AdmmParams p = cfg.cp;
  p.min_ineq = 1.0;
  p.require_min_impr = false;
  p.stop_below_n = true;
  p.early_bound_every = 100;
  const auto start = std::chrono::steady_clock::now();
  auto spent = [&]() { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };

  int k = 1;
  for (;;) {
    if (k >= n) {
      out.lower_bound = n;
      break;
    }
    const double remaining = cfg.time_limit - spent();
    if (remaining <= 0) {
      out.lower_bound = k;
      break;
    }
    p.time_limit_global = std::min(cfg.per_k_budget, remaining);
    const CpAdmmResult res = cp_admm(g, k, p, -1);
    out.steps.push_back({k, res.ub, res.stats.elapsed_s, res.stats.outer_iterations});
    for (const auto& t : res.trace) out.trace.push_back(tag_line(t.to_json(), "chromatic", k));
    const double fl = std::floor(res.ub + 1e-6);
    if (!(res.ub < n - 1e-6) || fl < 1) {
      out.lower_bound = k;
      break;
    }
    const long long next = (static_cast<long long>(k) * n + static_cast<long long>(fl) - 1) / static_cast<long long>(fl);
    k = static_cast<int>(std::min<long long>(std::max<long long>(next, k + 1), n));
  }
  return out;
}

Report run_chromatic(const Graph& g, const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  ChromaticResult c = chromatic_lower_bound(g, cfg);
  Report r = base_report(g, Mode::Chromatic, c.lower_bound);
  r.json.erase("k");
  r.json["chi_lower_bound"] = c.lower_bound;
  nlohmann::ordered_json steps = nlohmann::ordered_json::array();
  for (const auto& s : c.steps) {
    nlohmann::ordered_json e;
    e["k"] = s.k;
    e["ub"] = s.ub;
    e["below_n"] = s.ub < g.num_vertices() - 1e-6;
    e["outer_iters"] = s.outer_iters;
    e["elapsed_s"] = s.elapsed_s;
    steps.push_back(e);
    r.outer_iters += s.outer_iters;
  }
  r.json["steps"] = steps;
  r.time_ub =
      cfg.record_timings ? std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() : 0.0;
  r.json["time"] = r.time_ub;
  r.trace = std::move(c.trace);
  return r;
}

std::vector<Report> run(const Graph& g, const RunConfig& cfg) {
  if (cfg.mode == Mode::Chromatic) return {run_chromatic(g, cfg)};
  if (cfg.ks.empty()) throw InvalidArgument("no k given");
  std::vector<Report> out;
  for (int k : cfg.ks) {
    switch (cfg.mode) {
      case Mode::Bound: out.push_back(run_bound(g, cfg, k)); break;
      case Mode::Solve: out.push_back(run_solve(g, cfg, k)); break;
      case Mode::Oracle: out.push_back(run_oracle(g, cfg, k)); break;
      case Mode::Chromatic: break;
    }
  }
  return out;
}

std::string reports_csv(const std::vector<Report>& reports) {
  std::string s = "graph,n,density,k,ub,lb,time_ub,time_lb,inner_iters,outer_iters,cuts\n";
  for (const auto& r : reports) {
    std::string name = r.graph;
    if (name.find_first_of(",\"\n") != std::string::npos) {
      std::string q = "\"";
      for (char ch : name) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
      name = q + "\"";
    }
    s += name + "," + std::to_string(r.n) + "," + fmt("%.6f", r.density) + "," + std::to_string(r.k) + "," +
         (r.has_ub ? fmt("%.6f", r.ub) : "") + "," + (r.has_lb ? std::to_string(r.lb) : "") + "," +
         fmt("%.3f", r.time_ub) + "," + fmt("%.3f", r.time_lb) + "," + std::to_string(r.inner_iters) + "," +
         std::to_string(r.outer_iters) + "," + std::to_string(r.cuts) + "\n";
  }
  return s;
}

std::string reports_json(const std::vector<Report>& reports) {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["reports"] = nlohmann::ordered_json::array();
  for (const auto& r : reports) j["reports"].push_back(r.json);
  return j.dump(2) + "\n";
}

std::string reports_trace(const std::vector<Report>& reports) {
  std::string s;
  for (const auto& r : reports)
    for (const auto& line : r.trace) s += line + "\n";
  return s;
}

LpSolver external_lp_solver(const std::string& command) {
  const std::string cmd = command.empty() ? std::string("python3 ") + MKCS_TOOLS_DIR + "/lp_highs.py" : command;
  return [cmd](const Eigen::VectorXd& c, double constant, const std::vector<Cut>& cuts) -> std::optional<double> {
    nlohmann::json j;
    j["c"] = std::vector<double>(c.data(), c.data() + c.size());
    j["constant"] = constant;
    j["cuts"] = nlohmann::json::array();
    for (const auto& cut : cuts) {
      nlohmann::json e;
      e["coeffs"] = cut.coeffs;
      e["rhs"] = cut.rhs;
      j["cuts"].push_back(e);
    }
    char path[] = "/tmp/mkcs_lp_XXXXXX";
    const int fd = mkstemp(path);
    if (fd < 0) return std::nullopt;
    const std::string body = j.dump();
    const bool wrote = write(fd, body.data(), body.size()) == static_cast<ssize_t>(body.size());
    close(fd);
    std::optional<double> value;
    if (wrote) {
      if (FILE* pipe = popen((cmd + " < " + path).c_str(), "r")) {
        std::string outp;
        char buf[4096];
        std::size_t got;
        while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) outp.append(buf, got);
        if (pclose(pipe) == 0) {
          try {
            const auto res = nlohmann::json::parse(outp);
            if (res.value("status", "") == "optimal") value = res.at("value").get<double>();
          } catch (const std::exception&) {
          }
        }
      }
    }
    std::remove(path);
    return value;
  };
}

}  // namespace mkcs
