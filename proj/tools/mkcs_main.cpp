#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mkcs/mkcs.h"

namespace {

constexpr int kExitParse = 2;
constexpr int kExitInvalid = 3;

int exit_code(mkcs_status s) {
  switch (s) {
    case MKCS_OK: return 0;
    case MKCS_ERR_PARSE:
    case MKCS_ERR_IO: return kExitParse;
    case MKCS_ERR_INVALID_ARGUMENT: return kExitInvalid;
    default: return 1;
  }
}

int fail(mkcs_status s) {
  std::fprintf(stderr, "mkcs: %s\n", mkcs_last_error());
  return exit_code(s);
}

bool write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  out << body;
  return static_cast<bool>(out);
}

struct CString {
  char* p = nullptr;
  ~CString() { mkcs_string_free(p); }
  std::string str() const { return p ? std::string(p) : std::string(); }
};

std::vector<std::string> config_keys() {
  CString buf;
  std::vector<std::string> keys;
  if (mkcs_config_keys(&buf.p) != MKCS_OK) return keys;
  for (const char* s = buf.p; *s; s += std::strlen(s) + 1) keys.emplace_back(s);
  return keys;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Upper and lower bounds for the maximum k-colorable subgraph problem"};
  app.set_version_flag("--version", std::string(mkcs_version()));

  std::string mode, instance, config_path, out_path, csv_path, trace_path;
  app.add_option("mode", mode, "bound | solve | chromatic | oracle")
      ->required()
      ->check(CLI::IsMember({"bound", "solve", "chromatic", "oracle"}));
  app.add_option("instance", instance, "graph in DIMACS edge format")->required();
  app.add_option("--config", config_path, "flat JSON object of parameters");
  app.add_option("--out", out_path, "write the JSON report here instead of stdout");
  app.add_option("--csv", csv_path, "write the CSV table here");
  app.add_option("--trace", trace_path, "write the JSON-lines trace here");
  bool no_timing = false, expensive = false;
  app.add_flag("--no-timing", no_timing, "write 0 for every wall-clock field");
  app.add_flag("--expensive-tests", expensive, "lift the oracle size guard");

  std::map<std::string, std::string> values;
  const std::vector<std::string> skip = {"no-timing", "expensive-tests"};
  for (const auto& key : config_keys()) {
    if (std::find(skip.begin(), skip.end(), key) != skip.end()) continue;
    app.add_option("--" + key, values[key]);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInvalid;
  }

  mkcs_config* raw_cfg = nullptr;
  if (mkcs_status s = mkcs_config_create(&raw_cfg); s != MKCS_OK) return fail(s);
  std::unique_ptr<mkcs_config, decltype(&mkcs_config_free)> cfg(raw_cfg, mkcs_config_free);
  if (!config_path.empty())
    if (mkcs_status s = mkcs_config_load_json(cfg.get(), config_path.c_str()); s != MKCS_OK) return fail(s);
  for (const auto& [key, value] : values) {
    if (app.count("--" + key) == 0) continue;
    if (mkcs_status s = mkcs_config_set(cfg.get(), key.c_str(), value.c_str()); s != MKCS_OK) return fail(s);
  }
  if (no_timing) mkcs_config_set(cfg.get(), "no-timing", "true");
  if (expensive) mkcs_config_set(cfg.get(), "expensive-tests", "true");

  mkcs_graph* raw_graph = nullptr;
  if (mkcs_status s = mkcs_graph_load(instance.c_str(), &raw_graph); s != MKCS_OK) return fail(s);
  std::unique_ptr<mkcs_graph, decltype(&mkcs_graph_free)> graph(raw_graph, mkcs_graph_free);
  for (size_t i = 0; i < mkcs_graph_num_warnings(graph.get()); ++i)
    std::fprintf(stderr, "mkcs: warning: %s\n", mkcs_graph_warning(graph.get(), i));

  const std::map<std::string, mkcs_mode> modes = {{"bound", MKCS_MODE_BOUND},
                                                  {"solve", MKCS_MODE_SOLVE},
                                                  {"chromatic", MKCS_MODE_CHROMATIC},
                                                  {"oracle", MKCS_MODE_ORACLE}};
  mkcs_report* raw_report = nullptr;
  if (mkcs_status s = mkcs_run(graph.get(), cfg.get(), modes.at(mode), &raw_report); s != MKCS_OK) return fail(s);
  std::unique_ptr<mkcs_report, decltype(&mkcs_report_free)> report(raw_report, mkcs_report_free);

  CString json, csv, trace;
  mkcs_report_json(report.get(), &json.p);
  if (out_path.empty()) {
    std::fputs(json.p, stdout);
  } else {
    if (!write_file(out_path, json.str())) {
      std::fprintf(stderr, "mkcs: cannot write '%s'\n", out_path.c_str());
      return 1;
    }
    for (size_t i = 0; i < mkcs_report_count(report.get()); ++i) {
      const double ub = mkcs_report_ub(report.get(), i);
      const int lb = mkcs_report_lb(report.get(), i);
      std::printf("k=%d", mkcs_report_k(report.get(), i));
      if (!std::isnan(ub)) std::printf(" ub=%.4f", ub);
      if (lb >= 0) std::printf(" lb=%d", lb);
      std::printf("\n");
    }
  }
  if (!csv_path.empty()) {
    mkcs_report_csv(report.get(), &csv.p);
    if (!write_file(csv_path, csv.str())) {
      std::fprintf(stderr, "mkcs: cannot write '%s'\n", csv_path.c_str());
      return 1;
    }
  }
  if (!trace_path.empty()) {
    mkcs_report_trace(report.get(), &trace.p);
    if (!write_file(trace_path, trace.str())) {
      std::fprintf(stderr, "mkcs: cannot write '%s'\n", trace_path.c_str());
      return 1;
    }
  }
  return 0;
}
