#include "mkcs/linalg.hpp"

#include <stdexcept>

namespace mkcs {

AugmentedMatrix::AugmentedMatrix(Eigen::MatrixXd m) {
  if (m.rows() != m.cols()) throw InvalidArgument("augmented matrix must be square");
  m_ = 0.5 * (m + m.transpose());
}

AugmentedMatrix AugmentedMatrix::objective(int num_vertices) {
  AugmentedMatrix a(num_vertices);
  for (int i = 1; i <= num_vertices; ++i) a.m_(i, i) = 1.0;
  return a;
}

AugmentedMatrix AugmentedMatrix::initial_point(int num_vertices, int k) {
  AugmentedMatrix a(num_vertices);
  a.m_(0, 0) = k;
  for (int i = 1; i <= num_vertices; ++i) {
    a.m_(i, i) = 1.0;
    a.m_(0, i) = 1.0;
    a.m_(i, 0) = 1.0;
  }
  return a;
}

double inner(const AugmentedMatrix& a, const AugmentedMatrix& b) {
  return a.dense().cwiseProduct(b.dense()).sum();
}

namespace {

template <typename Scalar>
Eigen::MatrixXd clipped_recompose(const Eigen::MatrixXd& a, bool keep_positive) {
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Eigen::SelfAdjointEigenSolver<Mat> es(a.cast<Scalar>());
  if (es.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
  const auto& d = es.eigenvalues();
  const Mat& q = es.eigenvectors();
  // Eigenvalues come back in increasing order.
  const Eigen::Index size = d.size();
  if (keep_positive) {
    Eigen::Index first = 0;
    while (first < size && d(first) <= 0) ++first;
    const Eigen::Index cnt = size - first;
    if (cnt == 0) return Eigen::MatrixXd::Zero(a.rows(), a.cols());
    Mat v = q.rightCols(cnt) * d.tail(cnt).cwiseSqrt().asDiagonal();
    return (v * v.transpose()).template cast<double>();
  }
  Eigen::Index cnt = 0;
  while (cnt < size && d(cnt) < 0) ++cnt;
  if (cnt == 0) return Eigen::MatrixXd::Zero(a.rows(), a.cols());
  Mat v = q.leftCols(cnt) * (-d.head(cnt)).cwiseSqrt().asDiagonal();
  return (-(v * v.transpose())).template cast<double>();
}

void require_finite(const AugmentedMatrix& a) {
  if (!a.dense().allFinite()) throw std::runtime_error("spectral projection: non-finite matrix entry");
}

}  // namespace

AugmentedMatrix project_psd(const AugmentedMatrix& a, SpectralOptions opts) {
  require_finite(a);
  if (opts.single_precision) return AugmentedMatrix(clipped_recompose<float>(a.dense(), true));
  return AugmentedMatrix(clipped_recompose<double>(a.dense(), true));
}

AugmentedMatrix project_nsd(const AugmentedMatrix& a, SpectralOptions opts) {
  require_finite(a);
  if (opts.single_precision) return AugmentedMatrix(clipped_recompose<float>(a.dense(), false));
  return AugmentedMatrix(clipped_recompose<double>(a.dense(), false));
}

FreeIndexMap::FreeIndexMap(const Graph& g) : n_(g.num_vertices()) {
  lookup_.assign(static_cast<std::size_t>(n_ + 1) * (n_ + 1), -1);
  for (Vertex i = 1; i <= n_; ++i) {
    for (Vertex j = i; j <= n_; ++j) {
      if (i != j && g.adjacent(i, j)) continue;
      const int p = static_cast<int>(pairs_.size());
      pairs_.emplace_back(i, j);
      weights_.push_back(i == j ? 3.0 : 2.0);
      lookup_[static_cast<std::size_t>(i) * (n_ + 1) + j] = p;
      lookup_[static_cast<std::size_t>(j) * (n_ + 1) + i] = p;
    }
  }
}

Eigen::VectorXd mat_to_vec(const AugmentedMatrix& a, const FreeIndexMap& map) {
  Eigen::VectorXd v(map.size());
  for (int p = 0; p < map.size(); ++p) {
    const auto [i, j] = map.entry(p);
    v(p) = i == j ? a(i, i) / 3.0 + 2.0 * a(0, i) / 3.0 : a(i, j);
  }
  return v;
}

AugmentedMatrix vec_to_mat(const Eigen::VectorXd& v, const FreeIndexMap& map, int k) {
  if (v.size() != map.size()) throw InvalidArgument("vec_to_mat: length mismatch");
  AugmentedMatrix a(map.num_vertices());
  a.set(0, 0, k);
  for (int p = 0; p < map.size(); ++p) {
    const auto [i, j] = map.entry(p);
    if (i == j) {
      a.set(i, i, v(p));
      a.set(0, i, v(p));
    } else {
      a.set(i, j, v(p));
    }
  }
  return a;
}

}  // namespace mkcs
