#include "mkcs/projection.hpp"

#include <algorithm>
#include <cmath>

namespace mkcs {

Eigen::VectorXd project_box(const Eigen::VectorXd& x) { return x.cwiseMax(0.0).cwiseMin(1.0); }

namespace {

double weighted_norm2(const Cut& cut, const Eigen::VectorXd& w) {
  double s = 0.0;
  for (const auto& [p, a] : cut.coeffs) s += a * a / w(p);
  return s;
}

}  // namespace

Eigen::VectorXd project_halfspace_weighted(const Eigen::VectorXd& x, const Cut& cut, const Eigen::VectorXd& w) {
  if (cut.coeffs.empty()) throw InvalidArgument("halfspace projection: cut has empty support");
  const double excess = cut.lhs(x) - cut.rhs;
  if (excess <= 0.0) return x;
  const double step = excess / weighted_norm2(cut, w);
  Eigen::VectorXd y = x;
  for (const auto& [p, a] : cut.coeffs) y(p) -= step * a / w(p);
  return y;
}

double max_cut_violation(const Eigen::VectorXd& x, const std::vector<Cut>& cuts) {
  double worst = 0.0;
  for (const auto& c : cuts) worst = std::max(worst, c.lhs(x) - c.rhs);
  return worst;
}

double max_box_violation(const Eigen::VectorXd& x) {
  if (x.size() == 0) return 0.0;
  return std::max({0.0, -x.minCoeff(), x.maxCoeff() - 1.0});
}

DykstraState dykstra(const Eigen::VectorXd& x0, const Eigen::VectorXd& w, const std::vector<Cut>& cuts,
                     const std::vector<std::vector<int>>& clusters, DykstraOptions opts) {
  DykstraState st;
  st.x = x0;
  st.box_correction = Eigen::VectorXd::Zero(x0.size());
  st.cut_corrections.resize(cuts.size());
  st.multipliers.assign(cuts.size(), 0.0);
  std::vector<double> norms(cuts.size());
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    if (cuts[i].coeffs.empty()) throw InvalidArgument("dykstra: cut has empty support");
    st.cut_corrections[i].assign(cuts[i].coeffs.size(), 0.0);
    norms[i] = weighted_norm2(cuts[i], w);
  }

  Eigen::VectorXd& x = st.x;
  std::vector<double> y;
  Eigen::VectorXd start, start_box;
  std::vector<std::vector<double>> start_cuts;
  // Weighted movement of x and of all corrections over the last cycle.
  auto state_moved = [&] {
    double s = (x - start).cwiseAbs2().dot(w) + (st.box_correction - start_box).cwiseAbs2().dot(w);
    for (std::size_t i = 0; i < cuts.size(); ++i)
      for (std::size_t t = 0; t < cuts[i].coeffs.size(); ++t) {
        const double d = st.cut_corrections[i][t] - start_cuts[i][t];
        s += w(cuts[i].coeffs[t].first) * d * d;
      }
    return std::sqrt(s);
  };
  while (st.cycles < opts.max_cycles) {
    ++st.cycles;
    if (opts.step_tol >= 0.0) {
      start = x;
      start_box = st.box_correction;
      start_cuts = st.cut_corrections;
    }
    {
      const Eigen::VectorXd yb = x + st.box_correction;
      x = project_box(yb);
      st.box_correction = yb - x;
    }
    // Supports inside a cluster are disjoint, so projecting its cuts one after
    // another equals projecting onto the cluster's intersection at once.
    for (const auto& cluster : clusters) {
      for (int ci : cluster) {
        const Cut& cut = cuts[ci];
        auto& corr = st.cut_corrections[ci];
        y.resize(cut.coeffs.size());
        double lhs = 0.0;
        for (std::size_t t = 0; t < cut.coeffs.size(); ++t) {
          const auto& [p, a] = cut.coeffs[t];
          y[t] = x(p) + corr[t];
          lhs += a * y[t];
        }
        const double excess = lhs - cut.rhs;
        const double step = excess > 0.0 ? excess / norms[ci] : 0.0;
        st.multipliers[ci] = step;
        for (std::size_t t = 0; t < cut.coeffs.size(); ++t) {
          const auto& [p, a] = cut.coeffs[t];
          const double proj = step > 0.0 ? y[t] - step * a / w(p) : y[t];
          x(p) = proj;
          corr[t] = y[t] - proj;
        }
      }
    }
    if (max_cut_violation(x, cuts) <= opts.eps && max_box_violation(x) <= opts.eps &&
        (opts.step_tol < 0.0 || state_moved() <= opts.step_tol)) {
      st.converged = true;
      return st;
    }
  }
  if (opts.clamp_on_cap) x = project_box(x);
  return st;
}

AffineProjection project_affine_set(const AugmentedMatrix& u, const FreeIndexMap& map, const std::vector<Cut>& cuts,
                                    const std::vector<std::vector<int>>& clusters, int k, DykstraOptions opts) {
  const Eigen::VectorXd v = mat_to_vec(u, map);
  AffineProjection out;
  if (cuts.empty()) {
    out.matrix = vec_to_mat(project_box(v), map, k);
    return out;
  }
  const Eigen::Map<const Eigen::VectorXd> w(map.weights().data(), map.size());
  DykstraState st = dykstra(v, w, cuts, clusters, opts);
  out.matrix = vec_to_mat(st.x, map, k);
  out.multipliers = std::move(st.multipliers);
  out.cycles = st.cycles;
  out.exact = st.converged;
  return out;
}

}  // namespace mkcs
