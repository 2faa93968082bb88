#include "mkcs/cuts.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "json.hpp"

namespace mkcs {

const char* family_name(CutFamily f) {
  switch (f) {
    case CutFamily::T1: return "T1";
    case CutFamily::CliqueExt: return "CLIQUE_EXT";
    case CutFamily::CliqueUnion: return "CLIQUE_UNION";
    case CutFamily::Hole5: return "HOLE5";
    case CutFamily::T2: return "T2";
  }
  return "?";
}

double Cut::lhs(const Eigen::VectorXd& x) const {
  double s = 0.0;
  for (const auto& [p, a] : coeffs) s += a * x(p);
  return s;
}

std::vector<int> Cut::support() const {
  std::vector<int> s;
  s.reserve(coeffs.size());
  for (const auto& [p, a] : coeffs) s.push_back(p);
  return s;
}

std::string Cut::to_json() const {
  nlohmann::json j;
  j["id"] = id;
  j["family"] = family_name(family);
  j["rhs"] = rhs;
  auto arr = nlohmann::json::array();
  for (const auto& [p, a] : coeffs) arr.push_back({p, a});
  j["coeffs"] = std::move(arr);
  return j.dump();
}

CutBuilder& CutBuilder::add(Vertex i, Vertex j, double coef) {
  const int p = map_.index(i, j);
  if (p >= 0) terms_.emplace_back(p, coef);
  return *this;
}

Cut CutBuilder::build(double rhs, CutFamily family, std::uint64_t id) {
  std::sort(terms_.begin(), terms_.end());
  Cut c;
  c.rhs = rhs;
  c.family = family;
  c.id = id;
  for (const auto& [p, a] : terms_) {
    if (!c.coeffs.empty() && c.coeffs.back().first == p) {
      c.coeffs.back().second += a;
    } else {
      c.coeffs.emplace_back(p, a);
    }
  }
  std::erase_if(c.coeffs, [](const auto& t) { return t.second == 0.0; });
  terms_.clear();
  return c;
}

void SeparationReport::add(Cut cut, double violation) {
  ++counts[static_cast<int>(cut.family)];
  candidates.push_back({std::move(cut), violation});
}

void SeparationReport::merge(SeparationReport other) {
  for (int f = 0; f < kNumCutFamilies; ++f) counts[f] += other.counts[f];
  cliques_truncated = cliques_truncated || other.cliques_truncated;
  holes_truncated = holes_truncated || other.holes_truncated;
  for (auto& c : other.candidates) candidates.push_back(std::move(c));
}

int kappa_rank(const Clique& q, int kappa) {
  if (kappa <= 0) return 0;
  return std::min<int>(kappa, static_cast<int>(q.vertices.size()));
}

int kappa_rank_odd_hole(int length, int kappa) {
  if (kappa <= 0) return 0;
  return std::min(kappa * (length - 1) / 2, length);
}

int kappa_rank(const Hole5&, int kappa) { return kappa_rank_odd_hole(5, kappa); }

namespace {

// x entry for matrix position (i,j); entries fixed by edges read as 0.
struct EntryReader {
  const FreeIndexMap& map;
  const Eigen::VectorXd& x;
  double operator()(Vertex i, Vertex j) const {
    const int p = map.index(i, j);
    return p < 0 ? 0.0 : x(p);
  }
};

template <typename T>
std::vector<const T*> draw_subset(const std::vector<const T*>& pool, std::size_t limit, std::mt19937_64& rng) {
  if (pool.size() <= limit) return pool;
  std::vector<const T*> out;
  out.reserve(limit);
  std::sample(pool.begin(), pool.end(), std::back_inserter(out), limit, rng);
  return out;
}

}  // namespace

SeparationReport separate_triangle(const Graph& g, const FreeIndexMap& map, const Eigen::VectorXd& x, int k,
                                   double min_viol) {
  SeparationReport report;
  const EntryReader at{map, x};
  const int n = g.num_vertices();
  std::uint64_t id = 0;
  for (Vertex a = 1; a <= n; ++a) {
    for (Vertex b = a + 1; b <= n; ++b) {
      for (Vertex c = b + 1; c <= n; ++c) {
        const std::array<Vertex, 3> t{a, b, c};
        for (int role = 0; role < 3; ++role) {
          const Vertex l = t[role], i = t[(role + 1) % 3], j = t[(role + 2) % 3];
          const double viol = at(i, l) + at(j, l) - at(l, l) - at(i, j);
          ++id;
          if (viol >= min_viol) {
            CutBuilder cb(map);
            cb.add(i, l, 1.0).add(j, l, 1.0).add(l, l, -1.0).add(i, j, -1.0);
            report.add(cb.build(0.0, CutFamily::T1, id), viol);
          }
        }
        ++id;
        // T2 is implied by the bounds for k > 2, and by the clique bound on
        // triangles.
        if (k > 2) continue;
        if (g.adjacent(a, b) && g.adjacent(a, c) && g.adjacent(b, c)) continue;
        const double viol = at(a, a) + at(b, b) + at(c, c) - at(a, b) - at(a, c) - at(b, c) - k;
        if (viol >= min_viol) {
          CutBuilder cb(map);
          cb.add(a, a, 1.0).add(b, b, 1.0).add(c, c, 1.0).add(a, b, -1.0).add(a, c, -1.0).add(b, c, -1.0);
          report.add(cb.build(static_cast<double>(k), CutFamily::T2, id), viol);
        }
      }
    }
  }
  return report;
}

SeparationReport separate_clique_external(const Graph& g, const FreeIndexMap& map, const Eigen::VectorXd& x,
                                          const CliqueEnumeration& cliques, int, double min_viol,
                                          int max_cliques, std::mt19937_64& rng) {
  SeparationReport report;
  report.cliques_truncated = !cliques.complete;
  const EntryReader at{map, x};
  std::vector<const Clique*> pool;
  for (const auto& q : cliques.maximal) pool.push_back(&q);
  for (const auto& q : cliques.size6) pool.push_back(&q);
  const auto chosen = draw_subset(pool, static_cast<std::size_t>(std::max(0, max_cliques)), rng);
  const int n = g.num_vertices();
  std::vector<char> in_q(n + 1, 0);
  std::uint64_t id = 0;
  for (const Clique* q : chosen) {
    for (Vertex v : q->vertices) in_q[v] = 1;
    for (Vertex l = 1; l <= n; ++l) {
      ++id;
      if (in_q[l]) continue;
      double lhs = 0.0;
      for (Vertex i : q->vertices) lhs += at(i, l);
      double viol = lhs - at(l, l);
      if (viol < min_viol) continue;
      const Clique* use = q;
      Clique grown;
      if (q->vertices.size() == 6 && !q->maximal) {
        grown = extend_clique_greedy(g, *q, l, [&](Vertex i) { return at(i, l); });
        use = &grown;
        lhs = 0.0;
        for (Vertex i : grown.vertices) lhs += at(i, l);
        viol = lhs - at(l, l);
      }
      CutBuilder cb(map);
      for (Vertex i : use->vertices) cb.add(i, l, 1.0);
      cb.add(l, l, -1.0);
      Cut cut = cb.build(0.0, CutFamily::CliqueExt, id);
      if (!cut.coeffs.empty()) report.add(std::move(cut), viol);
    }
    for (Vertex v : q->vertices) in_q[v] = 0;
  }
  return report;
}

SeparationReport separate_clique_union(const Graph& g, const FreeIndexMap& map, const Eigen::VectorXd& x,
                                       const CliqueEnumeration& cliques, int k, double min_viol,
                                       long max_clique_pairs, std::mt19937_64& rng) {
  SeparationReport report;
  report.cliques_truncated = !cliques.complete;
  const EntryReader at{map, x};
  std::vector<const Clique*> pool;
  for (const auto& q : cliques.maximal) pool.push_back(&q);
  for (const auto& q : cliques.size6)
    if (q.maximal) pool.push_back(&q);
  const long c = static_cast<long>(pool.size());
  const long total = c * (c - 1) / 2;

  std::vector<std::pair<long, long>> pairs;
  if (total <= max_clique_pairs) {
    pairs.reserve(static_cast<std::size_t>(total));
    for (long a = 0; a < c; ++a)
      for (long b = a + 1; b < c; ++b) pairs.emplace_back(a, b);
  } else if (max_clique_pairs > 0) {
    std::uniform_int_distribution<long> pick(0, c - 1);
    std::set<std::pair<long, long>> seen;
    while (static_cast<long>(seen.size()) < max_clique_pairs) {
      long a = pick(rng), b = pick(rng);
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      seen.emplace(a, b);
    }
    pairs.assign(seen.begin(), seen.end());
  }

  std::vector<char> mark(g.num_vertices() + 1, 0);
  for (const auto& [a, b] : pairs) {
    const auto& qa = pool[a]->vertices;
    const auto& qb = pool[b]->vertices;
    if (static_cast<int>(qa.size() + qb.size()) <= k) continue;
    for (Vertex v : qa) mark[v] = 1;
    bool disjoint = true;
    for (Vertex v : qb) disjoint = disjoint && !mark[v];
    for (Vertex v : qa) mark[v] = 0;
    if (!disjoint) continue;
    double viol = -static_cast<double>(k);
    for (Vertex i : qa) viol += at(i, i);
    for (Vertex j : qb) viol += at(j, j);
    for (Vertex i : qa)
      for (Vertex j : qb) viol -= at(i, j);
    if (viol < min_viol) continue;
    CutBuilder cb(map);
    for (Vertex i : qa) cb.add(i, i, 1.0);
    for (Vertex j : qb) cb.add(j, j, 1.0);
    for (Vertex i : qa)
      for (Vertex j : qb) cb.add(i, j, -1.0);
    const std::uint64_t id = static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(c) + b;
    report.add(cb.build(static_cast<double>(k), CutFamily::CliqueUnion, id), viol);
  }
  return report;
}

SeparationReport separate_odd_hole(const Graph& g, const FreeIndexMap& map, const Eigen::VectorXd& x,
                                   const HoleEnumeration& holes, int, double min_viol, int max_holes,
                                   std::mt19937_64& rng) {
  SeparationReport report;
  report.holes_truncated = !holes.complete;
  const EntryReader at{map, x};
  std::vector<const Hole5*> pool;
  for (const auto& h : holes.holes) pool.push_back(&h);
  const auto chosen = draw_subset(pool, static_cast<std::size_t>(std::max(0, max_holes)), rng);
  const int n = g.num_vertices();
  const double rank1 = kappa_rank_odd_hole(5, 1);
  std::uint64_t id = 0;
  for (const Hole5* h : chosen) {
    for (Vertex l = 1; l <= n; ++l) {
      ++id;
      if (std::find(h->vertices.begin(), h->vertices.end(), l) != h->vertices.end()) continue;
      double viol = -rank1 * at(l, l);
      for (Vertex i : h->vertices) viol += at(i, l);
      if (viol < min_viol) continue;
      CutBuilder cb(map);
      for (Vertex i : h->vertices) cb.add(i, l, 1.0);
      cb.add(l, l, -rank1);
      report.add(cb.build(0.0, CutFamily::Hole5, id), viol);
    }
  }
  return report;
}

CutKey cut_key(const Cut& c) {
  CutKey key;
  key.reserve(c.coeffs.size() + 1);
  for (const auto& [p, a] : c.coeffs) key.emplace_back(p, std::llround(a * 1e9));
  key.emplace_back(-1, std::llround(c.rhs * 1e9));
  return key;
}

std::vector<Cut> select_cuts(const std::vector<SeparationReport>& reports, int phase, const SelectionLimits& limits,
                             std::set<CutKey>& existing) {
  std::vector<const Candidate*> pool;
  for (const auto& r : reports)
    for (const auto& c : r.candidates)
      if (phase != 1 || c.cut.family == CutFamily::CliqueExt) pool.push_back(&c);
  std::stable_sort(pool.begin(), pool.end(), [](const Candidate* a, const Candidate* b) {
    if (a->violation != b->violation) return a->violation > b->violation;
    if (a->cut.family != b->cut.family) return a->cut.family < b->cut.family;
    return a->cut.id < b->cut.id;
  });

  std::vector<Cut> accepted;
  std::unordered_map<int, int> uses;
  for (const Candidate* c : pool) {
    if (static_cast<int>(accepted.size()) >= limits.max_ineq) break;
    bool ok = true;
    for (const auto& [p, a] : c->cut.coeffs) {
      auto it = uses.find(p);
      if (it != uses.end() && it->second >= limits.max_cuts_per_var) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    auto key = cut_key(c->cut);
    if (existing.count(key)) continue;
    existing.insert(std::move(key));
    for (const auto& [p, a] : c->cut.coeffs) ++uses[p];
    accepted.push_back(c->cut);
  }
  return accepted;
}

std::vector<std::vector<int>> cluster_cuts(const std::vector<Cut>& cuts) {
  std::vector<int> order(cuts.size());
  for (std::size_t i = 0; i < cuts.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return cuts[a].coeffs.size() > cuts[b].coeffs.size(); });
  int m = 0;
  for (const auto& c : cuts)
    for (const auto& [p, a] : c.coeffs) m = std::max(m, p + 1);

  std::vector<std::vector<int>> clusters;
  std::vector<std::vector<char>> used;
  for (int idx : order) {
    std::size_t slot = 0;
    for (; slot < clusters.size(); ++slot) {
      bool free = true;
      for (const auto& [p, a] : cuts[idx].coeffs) {
        if (used[slot][p]) {
          free = false;
          break;
        }
      }
      if (free) break;
    }
    if (slot == clusters.size()) {
      clusters.emplace_back();
      used.emplace_back(m, 0);
    }
    clusters[slot].push_back(idx);
    for (const auto& [p, a] : cuts[idx].coeffs) used[slot][p] = 1;
  }
  for (auto& cl : clusters) std::sort(cl.begin(), cl.end());
  return clusters;
}

}  // namespace mkcs
