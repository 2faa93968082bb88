#include "mkcs/mkcs.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <ios>
#include <limits>
#include <new>
#include <sstream>

#include "mkcs/driver.hpp"
#include "mkcs/oracle.hpp"

struct mkcs_graph {
  mkcs::ParseResult parsed;
};

struct mkcs_config {
  mkcs::RunConfig cfg;
};

struct mkcs_report {
  std::vector<mkcs::Report> reports;
};

namespace {

thread_local std::string last_error;

template <class F>
mkcs_status guarded(F&& f) {
  try {
    last_error.clear();
    f();
    return MKCS_OK;
  } catch (const mkcs::ParseError& e) {
    last_error = e.what();
    return MKCS_ERR_PARSE;
  } catch (const mkcs::InvalidArgument& e) {
    last_error = e.what();
    return MKCS_ERR_INVALID_ARGUMENT;
  } catch (const std::ios_base::failure& e) {
    last_error = e.what();
    return MKCS_ERR_IO;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return MKCS_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return MKCS_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) throw mkcs::InvalidArgument(std::string(what) + " is NULL");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* mkcs_version(void) { return "1.0.0"; }

const char* mkcs_last_error(void) { return last_error.c_str(); }

mkcs_status mkcs_graph_load(const char* path, mkcs_graph** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = nullptr;
    if (!std::ifstream(path)) throw std::ios_base::failure(std::string("cannot open '") + path + "'");
    *out = new mkcs_graph{mkcs::load_dimacs(path)};
  });
}

mkcs_status mkcs_graph_parse(const char* text, const char* name, mkcs_graph** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = nullptr;
    auto* g = new mkcs_graph{mkcs::parse_dimacs(std::string(text))};
    if (name) g->parsed.graph.name = name;
    *out = g;
  });
}

void mkcs_graph_free(mkcs_graph* g) { delete g; }
int mkcs_graph_num_vertices(const mkcs_graph* g) { return g ? g->parsed.graph.num_vertices() : 0; }
int mkcs_graph_num_edges(const mkcs_graph* g) { return g ? g->parsed.graph.num_edges() : 0; }
double mkcs_graph_density(const mkcs_graph* g) { return g ? g->parsed.graph.density() : 0.0; }
size_t mkcs_graph_num_warnings(const mkcs_graph* g) { return g ? g->parsed.warnings.size() : 0; }
const char* mkcs_graph_warning(const mkcs_graph* g, size_t i) {
  if (!g || i >= g->parsed.warnings.size()) return nullptr;
  return g->parsed.warnings[i].c_str();
}

mkcs_status mkcs_config_create(mkcs_config** out) {
  return guarded([&] {
    require(out, "out");
    *out = new mkcs_config{};
  });
}

void mkcs_config_free(mkcs_config* c) { delete c; }

mkcs_status mkcs_config_set(mkcs_config* c, const char* key, const char* value) {
  return guarded([&] {
    require(c, "config");
    require(key, "key");
    require(value, "value");
    c->cfg.set(key, value);
  });
}

mkcs_status mkcs_config_load_json(mkcs_config* c, const char* path) {
  return guarded([&] {
    require(c, "config");
    require(path, "path");
    c->cfg.load_json_file(path);
  });
}

mkcs_status mkcs_config_keys(char** out) {
  return guarded([&] {
    require(out, "out");
    std::string s;
    for (const auto& k : mkcs::RunConfig::keys()) s += k + '\0';
    s += '\0';
    char* buf = static_cast<char*>(std::malloc(s.size()));
    if (!buf) throw std::bad_alloc();
    std::memcpy(buf, s.data(), s.size());
    *out = buf;
  });
}

mkcs_status mkcs_run(const mkcs_graph* g, const mkcs_config* c, mkcs_mode mode, mkcs_report** out) {
  return guarded([&] {
    require(g, "graph");
    require(c, "config");
    require(out, "out");
    *out = nullptr;
    mkcs::RunConfig cfg = c->cfg;
    switch (mode) {
      case MKCS_MODE_BOUND: cfg.mode = mkcs::Mode::Bound; break;
      case MKCS_MODE_SOLVE: cfg.mode = mkcs::Mode::Solve; break;
      case MKCS_MODE_CHROMATIC: cfg.mode = mkcs::Mode::Chromatic; break;
      case MKCS_MODE_ORACLE: cfg.mode = mkcs::Mode::Oracle; break;
      default: throw mkcs::InvalidArgument("unknown mode");
    }
    cfg.finalize();
    auto* r = new mkcs_report{mkcs::run(g->parsed.graph, cfg)};
    *out = r;
  });
}

void mkcs_report_free(mkcs_report* r) { delete r; }
size_t mkcs_report_count(const mkcs_report* r) { return r ? r->reports.size() : 0; }

double mkcs_report_ub(const mkcs_report* r, size_t i) {
  if (!r || i >= r->reports.size() || !r->reports[i].has_ub) return std::numeric_limits<double>::quiet_NaN();
  return r->reports[i].ub;
}

int mkcs_report_lb(const mkcs_report* r, size_t i) {
  if (!r || i >= r->reports.size() || !r->reports[i].has_lb) return -1;
  return r->reports[i].lb;
}

int mkcs_report_k(const mkcs_report* r, size_t i) {
  if (!r || i >= r->reports.size()) return 0;
  return r->reports[i].k;
}

mkcs_status mkcs_report_json(const mkcs_report* r, char** out) {
  return guarded([&] {
    require(r, "report");
    require(out, "out");
    *out = dup_string(mkcs::reports_json(r->reports));
  });
}

mkcs_status mkcs_report_csv(const mkcs_report* r, char** out) {
  return guarded([&] {
    require(r, "report");
    require(out, "out");
    *out = dup_string(mkcs::reports_csv(r->reports));
  });
}

mkcs_status mkcs_report_trace(const mkcs_report* r, char** out) {
  return guarded([&] {
    require(r, "report");
    require(out, "out");
    *out = dup_string(mkcs::reports_trace(r->reports));
  });
}

void mkcs_string_free(char* s) { std::free(s); }

mkcs_status mkcs_alpha_k_exact(const mkcs_graph* g, int k, int* out) {
  return guarded([&] {
    require(g, "graph");
    require(out, "out");
    *out = mkcs::alpha_k_exact(g->parsed.graph, k);
  });
}

mkcs_status mkcs_chi_exact(const mkcs_graph* g, int* out) {
  return guarded([&] {
    require(g, "graph");
    require(out, "out");
    *out = mkcs::chi_exact(g->parsed.graph);
  });
}

}  // extern "C"
