#pragma once

#include <vector>

#include "mkcs/cuts.hpp"
#include "mkcs/linalg.hpp"

namespace mkcs {

Eigen::VectorXd project_box(const Eigen::VectorXd& x);

// Weighted projection onto {a.x <= b}. Throws InvalidArgument for a cut with
// empty support.
Eigen::VectorXd project_halfspace_weighted(const Eigen::VectorXd& x, const Cut& cut, const Eigen::VectorXd& w);

struct DykstraOptions {
  double eps = 1e-2;
  int max_cycles = 100;
  // When non-negative, a cycle also has to move x and every correction by at
  // most this much in the weighted norm before the run counts as converged.
  // Feasibility alone can stop long before the projection is reached.
  double step_tol = -1.0;
  // Clamp an unconverged iterate to the box on return.
  bool clamp_on_cap = true;
};

struct DykstraState {
  Eigen::VectorXd x;
  Eigen::VectorXd box_correction;
  // Per cut, the correction restricted to the cut's support.
  std::vector<std::vector<double>> cut_corrections;
  // Per cut, the step length of its latest halfspace projection. The
  // correction of cut i equals multipliers[i] * W^{-1} a_i up to rounding.
  std::vector<double> multipliers;
  int cycles = 0;
  bool converged = false;
};

// Cyclic Dykstra over the box followed by the clusters in order. Stops when
// a full cycle leaves every cut and box violation <= eps (and, with step_tol,
// left the whole state within step_tol), or after max_cycles cycles; in the latter
// case the iterate is clamped to the box and converged = false.
DykstraState dykstra(const Eigen::VectorXd& x0, const Eigen::VectorXd& w, const std::vector<Cut>& cuts,
                     const std::vector<std::vector<int>>& clusters, DykstraOptions opts = {});

// Largest (a.x - b)_+ over the cuts and largest distance of x from [0,1]^m.
double max_cut_violation(const Eigen::VectorXd& x, const std::vector<Cut>& cuts);
double max_box_violation(const Eigen::VectorXd& x);

struct AffineProjection {
  AugmentedMatrix matrix;
  std::vector<double> multipliers;  // empty when there are no cuts
  int cycles = 0;
  bool exact = true;
};

AffineProjection project_affine_set(const AugmentedMatrix& u, const FreeIndexMap& map, const std::vector<Cut>& cuts,
                                    const std::vector<std::vector<int>>& clusters, int k, DykstraOptions opts = {});

}  // namespace mkcs
