#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>

#include "ortho/errors.hpp"

namespace ortho {

// Dense point cloud, one row per point. Positions live in a single matrix so
// the geometric kernels (centroid, covariance, frame projection) stay plain
// Eigen expressions; colors are byte triplets exactly as PCD files store them.
template <typename Scalar>
struct PointCloudT {
  using Positions = Eigen::Matrix<Scalar, Eigen::Dynamic, 3>;
  using Colors = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, 3>;

  Positions positions;  // x y z
  Colors colors;        // r g b, 0-255
  std::string label;    // category name, filled by dataset loading
  std::string view_id;  // stable view identifier (file stem or generator tag)

  Eigen::Index size() const { return positions.rows(); }

  void resize(Eigen::Index n) {
    positions.resize(n, 3);
    colors.resize(n, 3);
  }
};

using PointCloud = PointCloudT<double>;

template <typename Scalar>
Eigen::Matrix<Scalar, 3, 1> centroid(const PointCloudT<Scalar>& cloud) {
  if (cloud.size() == 0) throw EmptyCloud("centroid of an empty cloud");
  return cloud.positions.colwise().mean();
}

// Mean-removed second moment, normalized by the point count (not n-1).
template <typename Scalar>
Eigen::Matrix<Scalar, 3, 3> covariance(const PointCloudT<Scalar>& cloud) {
  if (cloud.size() == 0) throw EmptyCloud("covariance of an empty cloud");
  const Eigen::Matrix<Scalar, 3, 1> c = centroid(cloud);
  typename PointCloudT<Scalar>::Positions centered =
      cloud.positions.rowwise() - c.transpose();
  return centered.transpose() * centered / static_cast<Scalar>(cloud.size());
}

// True when the two clouds hold identical geometry and colors bit for bit.
// Labels and view ids are carried metadata, not content, and are ignored.
template <typename Scalar>
bool samePoints(const PointCloudT<Scalar>& a, const PointCloudT<Scalar>& b) {
  if (a.positions.rows() != b.positions.rows()) return false;
  return (a.positions.array() == b.positions.array()).all() &&
         (a.colors.array() == b.colors.array()).all();
}

}  // namespace ortho
