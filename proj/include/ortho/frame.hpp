#pragma once

#include <Eigen/Core>
#include <Eigen/Eigenvalues>
#include <string>

#include "ortho/errors.hpp"
#include "ortho/point_cloud.hpp"

namespace ortho {

// A cloud is degenerate for frame construction when its second eigenvalue
// collapses relative to the first (collinear or coincident geometry).
inline constexpr double kDegenerateEigenvalueRatio = 1e-9;

// Local reference frame of a cloud: origin at the centroid, axes columns are
// X (largest-variance direction), Y, and Z = X cross Y, so the basis is
// orthonormal and right-handed. Eigenvalues are kept in descending order.
template <typename Scalar>
struct ReferenceFrameT {
  Eigen::Matrix<Scalar, 3, 1> origin;
  Eigen::Matrix<Scalar, 3, 3> axes;
  Eigen::Matrix<Scalar, 3, 1> eigenvalues;
  Eigen::Matrix<Scalar, 3, 3> covariance;

  Eigen::Matrix<Scalar, 3, 1> x() const { return axes.col(0); }
  Eigen::Matrix<Scalar, 3, 1> y() const { return axes.col(1); }
  Eigen::Matrix<Scalar, 3, 1> z() const { return axes.col(2); }
};

using ReferenceFrame = ReferenceFrameT<double>;

// Majority vote over the centered points: the returned direction has at least
// as many points with strictly positive projection as strictly negative ones.
// Zero projections vote for neither side; an exact tie keeps the input
// direction. The vote is covariant with rigid motion, which is what makes the
// final histograms pose-invariant.
template <typename DerivedP, typename DerivedA>
Eigen::Matrix<typename DerivedA::Scalar, 3, 1> disambiguateSign(
    const Eigen::MatrixBase<DerivedP>& centered,
    const Eigen::MatrixBase<DerivedA>& axis) {
  using Scalar = typename DerivedA::Scalar;
  const auto proj = (centered * axis).eval();
  const Eigen::Index positive = (proj.array() > Scalar(0)).count();
  const Eigen::Index negative = (proj.array() < Scalar(0)).count();
  if (negative > positive) return -axis;
  return axis;
}

template <typename Scalar>
ReferenceFrameT<Scalar> computeReferenceFrame(const PointCloudT<Scalar>& cloud) {
  if (cloud.size() < 3)
    throw DegenerateCloud("need at least 3 points, got " +
                          std::to_string(cloud.size()));

  ReferenceFrameT<Scalar> frame;
  frame.origin = centroid(cloud);
  frame.covariance = covariance(cloud);

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<Scalar, 3, 3>> solver(frame.covariance);
  if (solver.info() != Eigen::Success)
    throw DegenerateCloud("eigendecomposition failed");

  // Eigen reports ascending eigenvalues; flip to descending.
  frame.eigenvalues = solver.eigenvalues().reverse();
  const Scalar l1 = frame.eigenvalues[0], l2 = frame.eigenvalues[1];
  if (l1 <= Scalar(0) || l2 < Scalar(kDegenerateEigenvalueRatio) * l1)
    throw DegenerateCloud("eigenvalue spectrum too flat for a stable frame");

  const auto centered =
      (cloud.positions.rowwise() - frame.origin.transpose()).eval();
  const Eigen::Matrix<Scalar, 3, 1> x =
      disambiguateSign(centered, solver.eigenvectors().col(2));
  const Eigen::Matrix<Scalar, 3, 1> y =
      disambiguateSign(centered, solver.eigenvectors().col(1));
  frame.axes.col(0) = x;
  frame.axes.col(1) = y;
  frame.axes.col(2) = x.cross(y);
  return frame;
}

}  // namespace ortho
