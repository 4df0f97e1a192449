#pragma once

#include <algorithm>
#include <cmath>

#include "ortho/descriptor.hpp"
#include "ortho/distance.hpp"
#include "ortho/errors.hpp"

namespace ortho {

template <typename Scalar>
Scalar shapeDistance(const MetricSpecT<Scalar>& spec,
                     const ShapeDescriptorT<Scalar>& p,
                     const ShapeDescriptorT<Scalar>& q) {
  return histogramDistance(spec.base, p.values, q.values);
}

// Color dissimilarity in the configured space. RGB and YUV reuse the base
// measure on the stored 3-vectors; HSV uses the dedicated hue-wrapped form
// with range [0,3]. Stored v is already on [0,1], so its term needs no
// further scaling.
template <typename Scalar>
Scalar colorDistance(const MetricSpecT<Scalar>& spec,
                     const ObjectRepresentationT<Scalar>& p,
                     const ObjectRepresentationT<Scalar>& q) {
  switch (spec.color_space) {
    case ColorSpace::None:
      throw MissingColorSpace("color distance requires a color space");
    case ColorSpace::Rgb:
      return histogramDistance(spec.base, p.color_rgb, q.color_rgb);
    case ColorSpace::Yuv:
      return histogramDistance(spec.base, p.color_yuv, q.color_yuv);
    case ColorSpace::Hsv: {
      const Scalar dh = std::abs(p.color_hsv[0] - q.color_hsv[0]);
      return std::min(dh, Scalar(360) - dh) / Scalar(180) +
             std::abs(p.color_hsv[1] - q.color_hsv[1]) +
             std::abs(p.color_hsv[2] - q.color_hsv[2]);
    }
  }
  throw MissingColorSpace("color distance requires a color space");
}

// D = (1-w) * d_s + w * d_c. The endpoints skip the unused component so that
// w=0 never touches color data and w=1 never computes a shape distance.
template <typename Scalar>
Scalar combinedDistance(const MetricSpecT<Scalar>& spec,
                        const ObjectRepresentationT<Scalar>& p,
                        const ObjectRepresentationT<Scalar>& q) {
  const Scalar w = spec.color_weight;
  if (spec.color_space == ColorSpace::None || w <= Scalar(0))
    return shapeDistance(spec, p.shape, q.shape);
  if (w >= Scalar(1)) return colorDistance(spec, p, q);
  return (Scalar(1) - w) * shapeDistance(spec, p.shape, q.shape) +
         w * colorDistance(spec, p, q);
}

}  // namespace ortho
