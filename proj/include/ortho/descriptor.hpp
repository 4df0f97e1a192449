#pragma once

#include <Eigen/Core>
#include <array>
#include <string>

#include "ortho/color.hpp"
#include "ortho/frame.hpp"
#include "ortho/point_cloud.hpp"
#include "ortho/projection.hpp"

namespace ortho {

// The concatenated orthographic shape histogram: three n x n projections laid
// out in plane_order, 3*n*n values total, summing to 3.
template <typename Scalar>
struct ShapeDescriptorT {
  int bins_per_side = 0;
  std::array<Plane, 3> plane_order = kCanonicalPlanes;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> values;

  Eigen::Index size() const { return values.size(); }
};

using ShapeDescriptor = ShapeDescriptorT<double>;

// One stored object view: shape histogram plus the mean color expressed in all
// three color spaces, so a single representation serves every color-space
// experiment. RGB and YUV components are scaled to [0,1]; HSV keeps the hue in
// degrees [0,360) with s and v in [0,1].
template <typename Scalar>
struct ObjectRepresentationT {
  ShapeDescriptorT<Scalar> shape;
  Color3<Scalar> color_rgb = Color3<Scalar>::Zero();
  Color3<Scalar> color_yuv = Color3<Scalar>::Zero();
  Color3<Scalar> color_hsv = Color3<Scalar>::Zero();
  std::string label;
  std::string view_id;
};

using ObjectRepresentation = ObjectRepresentationT<double>;

template <typename Scalar>
ShapeDescriptorT<Scalar> describeShape(const PointCloudT<Scalar>& cloud,
                                       int bins_per_side) {
  const ReferenceFrameT<Scalar> frame = computeReferenceFrame(cloud);
  std::array<ProjectionHistogramT<Scalar>, 3> hists;
  for (int i = 0; i < 3; ++i)
    hists[i] = projectToPlane(cloud, frame, kCanonicalPlanes[i], bins_per_side);

  ShapeDescriptorT<Scalar> desc;
  desc.bins_per_side = bins_per_side;
  desc.plane_order = orderPlanes(hists);

  const Eigen::Index cells = static_cast<Eigen::Index>(bins_per_side) * bins_per_side;
  desc.values.resize(3 * cells);
  for (int slot = 0; slot < 3; ++slot) {
    const auto& h = hists[static_cast<int>(desc.plane_order[slot])];
    desc.values.segment(slot * cells, cells) = h.bins;
  }
  return desc;
}

template <typename Scalar>
ObjectRepresentationT<Scalar> describe(const PointCloudT<Scalar>& cloud,
                                       int bins_per_side) {
  ObjectRepresentationT<Scalar> rep;
  rep.shape = describeShape(cloud, bins_per_side);

  const Color3<Scalar> mean = meanColor(cloud);  // 0-255 scale
  rep.color_rgb = mean / Scalar(255);
  rep.color_yuv = rgbToYuv(mean) / Scalar(255);
  const Color3<Scalar> hsv = rgbToHsv(mean);
  rep.color_hsv = Color3<Scalar>(hsv[0], hsv[1], hsv[2] / Scalar(255));

  rep.label = cloud.label;
  rep.view_id = cloud.view_id;
  return rep;
}

}  // namespace ortho
