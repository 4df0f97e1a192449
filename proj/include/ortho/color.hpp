#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>

#include "ortho/errors.hpp"
#include "ortho/point_cloud.hpp"

namespace ortho {

// Colors travel as Eigen 3-vectors. Conventions by space:
//   rgb: r, g, b each in [0, 255]
//   yuv: y, u, v each in [0, 255] (clamped)
//   hsv: h in degrees [0, 360), s in [0, 1], v in [0, 255]
template <typename Scalar>
using Color3 = Eigen::Matrix<Scalar, 3, 1>;

// Color constancy estimate: the channel-wise mean over all points, still on
// the 0-255 scale. Averaging happens in RGB once; every other space is a
// conversion of this single estimate.
template <typename Scalar>
Color3<Scalar> meanColor(const PointCloudT<Scalar>& cloud) {
  if (cloud.size() == 0) throw EmptyCloud("mean color of an empty cloud");
  return cloud.colors.template cast<Scalar>().colwise().mean();
}

// Analog YUV with a 128 offset recentering both chroma channels; output is
// clamped to [0, 255]. The coefficients are fixed by contract, including the
// four-digit blue-channel weight in the last row.
template <typename Scalar>
Color3<Scalar> rgbToYuv(const Color3<Scalar>& rgb) {
  Eigen::Matrix<Scalar, 3, 3> m;
  m << Scalar(0.299), Scalar(0.587), Scalar(0.114),
      Scalar(-0.168), Scalar(-0.331), Scalar(0.500),
      Scalar(0.500), Scalar(-0.418), Scalar(-0.0813);
  Color3<Scalar> yuv = m * rgb + Color3<Scalar>(Scalar(0), Scalar(128), Scalar(128));
  return yuv.cwiseMax(Scalar(0)).cwiseMin(Scalar(255));
}

// Standard max/min hue-sector conversion. Achromatic inputs (max == min, or
// all-zero) pin h = 0 and s = 0; v stays on the 0-255 scale because the HSV
// dissimilarity normalizes value itself.
template <typename Scalar>
Color3<Scalar> rgbToHsv(const Color3<Scalar>& rgb) {
  const Scalar r = rgb[0], g = rgb[1], b = rgb[2];
  const Scalar mx = std::max({r, g, b});
  const Scalar mn = std::min({r, g, b});
  const Scalar delta = mx - mn;

  Scalar h = 0;
  if (delta > Scalar(0)) {
    if (mx == r) {
      h = Scalar(60) * (g - b) / delta;
    } else if (mx == g) {
      h = Scalar(60) * ((b - r) / delta + Scalar(2));
    } else {
      h = Scalar(60) * ((r - g) / delta + Scalar(4));
    }
    if (h < Scalar(0)) h += Scalar(360);
    if (h >= Scalar(360)) h -= Scalar(360);
  }
  const Scalar s = mx > Scalar(0) ? delta / mx : Scalar(0);
  return Color3<Scalar>(h, s, mx);
}

}  // namespace ortho
