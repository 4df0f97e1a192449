#pragma once

#include <Eigen/Core>
#include <array>
#include <cmath>
#include <string>
#include <string_view>

#include "ortho/errors.hpp"
#include "ortho/frame.hpp"
#include "ortho/point_cloud.hpp"

namespace ortho {

// The three orthographic projection planes of the local frame, in canonical
// order. Canonical order doubles as the tie-break order wherever entropy or
// variance comparisons come out equal.
enum class Plane { XoY = 0, XoZ = 1, YoZ = 2 };

inline constexpr std::array<Plane, 3> kCanonicalPlanes = {Plane::XoY, Plane::XoZ,
                                                          Plane::YoZ};

constexpr std::string_view planeName(Plane p) {
  switch (p) {
    case Plane::XoY: return "XoY";
    case Plane::XoZ: return "XoZ";
    case Plane::YoZ: return "YoZ";
  }
  return "unknown";
}

inline Plane parsePlane(std::string_view name) {
  for (Plane p : kCanonicalPlanes)
    if (planeName(p) == name) return p;
  throw Error("unknown plane: " + std::string(name));
}

// One n x n normalized projection histogram with its two statistics. Bins are
// flattened row-major; rows follow the first in-plane coordinate.
template <typename Scalar>
struct ProjectionHistogramT {
  Plane plane = Plane::XoY;
  int bins_per_side = 0;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> bins;  // n*n entries, sums to 1
  Scalar entropy = Scalar(0);
  Scalar variance = Scalar(0);

  Scalar at(int row, int col) const { return bins[row * bins_per_side + col]; }
};

using ProjectionHistogram = ProjectionHistogramT<double>;

namespace detail {

// Which two frame coordinates span each plane.
constexpr std::array<int, 2> planeCoords(Plane p) {
  switch (p) {
    case Plane::XoY: return {0, 1};
    case Plane::XoZ: return {0, 2};
    case Plane::YoZ: return {1, 2};
  }
  return {0, 1};
}

}  // namespace detail

// Projects the cloud onto one frame plane and bins the footprint over its
// bounding rectangle. Points on the upper boundary fall in the last bin; a
// dimension with zero extent (planar clouds) maps everything to index 0.
template <typename Scalar>
ProjectionHistogramT<Scalar> projectToPlane(const PointCloudT<Scalar>& cloud,
                                            const ReferenceFrameT<Scalar>& frame,
                                            Plane plane, int bins_per_side) {
  if (bins_per_side < 1)
    throw Error("bins per side must be >= 1, got " + std::to_string(bins_per_side));
  const Eigen::Index count = cloud.size();
  if (count == 0) throw EmptyCloud("projection of an empty cloud");

  const auto local =
      ((cloud.positions.rowwise() - frame.origin.transpose()) * frame.axes).eval();
  const auto [ci, cj] = detail::planeCoords(plane);
  const auto u = local.col(ci);
  const auto v = local.col(cj);

  const Scalar umin = u.minCoeff(), umax = u.maxCoeff();
  const Scalar vmin = v.minCoeff(), vmax = v.maxCoeff();
  const Scalar uspan = umax - umin, vspan = vmax - vmin;
  const int n = bins_per_side;

  auto binOf = [n](Scalar value, Scalar lo, Scalar span) -> int {
    if (span <= Scalar(0)) return 0;
    int k = static_cast<int>(std::floor((value - lo) / span * Scalar(n)));
    if (k < 0) k = 0;
    if (k >= n) k = n - 1;
    return k;
  };

  ProjectionHistogramT<Scalar> hist;
  hist.plane = plane;
  hist.bins_per_side = n;
  hist.bins.setZero(static_cast<Eigen::Index>(n) * n);
  for (Eigen::Index i = 0; i < count; ++i) {
    const int row = binOf(u[i], umin, uspan);
    const int col = binOf(v[i], vmin, vspan);
    hist.bins[row * n + col] += Scalar(1);
  }
  hist.bins /= Scalar(count);

  // Shannon entropy in bits, with 0 log 0 = 0.
  Scalar h = 0;
  for (Eigen::Index i = 0; i < hist.bins.size(); ++i) {
    const Scalar b = hist.bins[i];
    if (b > Scalar(0)) h -= b * std::log2(b);
  }
  hist.entropy = h;

  // Population variance of the bin values around their mean 1/n^2.
  const Scalar mean = Scalar(1) / (Scalar(n) * Scalar(n));
  hist.variance = (hist.bins.array() - mean).square().sum() /
                  (Scalar(n) * Scalar(n));
  return hist;
}

// Concatenation order of the three planes: the highest-entropy plane first,
// then the lower-variance of the remaining two, then the leftover. Ties fall
// back to canonical plane order.
template <typename Scalar>
std::array<Plane, 3> orderPlanes(
    const std::array<ProjectionHistogramT<Scalar>, 3>& hists) {
  int first = 0;
  for (int i = 1; i < 3; ++i)
    if (hists[i].entropy > hists[first].entropy) first = i;

  int second = -1;
  for (int i = 0; i < 3; ++i) {
    if (i == first) continue;
    if (second < 0 || hists[i].variance < hists[second].variance) second = i;
  }
  int third = 3 - first - second;
  return {hists[first].plane, hists[second].plane, hists[third].plane};
}

}  // namespace ortho
