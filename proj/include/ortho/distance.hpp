#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <string_view>

#include "ortho/errors.hpp"

namespace ortho {

// The fourteen histogram dissimilarity measures. Pearson, Neyman and
// KullbackLeibler are directional (d(p,q) != d(q,p)); the rest are symmetric.
enum class Measure {
  Euclidean,
  Manhattan,
  ChiSquared,
  Pearson,
  Neyman,
  Canberra,
  KullbackLeibler,
  SymmetricKullbackLeibler,
  Motyka,
  Cosine,
  Dice,
  Bhattacharyya,
  Gower,
  Sorensen,
};

inline constexpr std::array<Measure, 14> kAllMeasures = {
    Measure::Euclidean,      Measure::Manhattan,
    Measure::ChiSquared,     Measure::Pearson,
    Measure::Neyman,         Measure::Canberra,
    Measure::KullbackLeibler, Measure::SymmetricKullbackLeibler,
    Measure::Motyka,         Measure::Cosine,
    Measure::Dice,           Measure::Bhattacharyya,
    Measure::Gower,          Measure::Sorensen,
};

enum class ColorSpace { None, Rgb, Yuv, Hsv };

inline constexpr std::array<ColorSpace, 4> kAllColorSpaces = {
    ColorSpace::None, ColorSpace::Rgb, ColorSpace::Yuv, ColorSpace::Hsv};

// Stabilizer added to per-term denominators and log-ratio arguments, and used
// as a floor for aggregate denominators, so zero bins never divide or take a
// log of zero. Floor form on aggregates keeps the identity values exact
// (d(p,p) = 0, Motyka = 1/2) on sum-to-one inputs.
inline constexpr double kStabilizer = 1e-10;

// Metric used end to end: a base histogram measure for shape, optionally mixed
// with a color term. color_weight w in [0, 1]; ColorSpace::None forces w = 0.
template <typename Scalar>
struct MetricSpecT {
  Measure base = Measure::Manhattan;
  ColorSpace color_space = ColorSpace::None;
  Scalar color_weight = Scalar(0);
};

using MetricSpec = MetricSpecT<double>;

constexpr std::string_view measureName(Measure m) {
  switch (m) {
    case Measure::Euclidean: return "euclidean";
    case Measure::Manhattan: return "manhattan";
    case Measure::ChiSquared: return "chi2";
    case Measure::Pearson: return "pearson";
    case Measure::Neyman: return "neyman";
    case Measure::Canberra: return "canberra";
    case Measure::KullbackLeibler: return "kl";
    case Measure::SymmetricKullbackLeibler: return "symkl";
    case Measure::Motyka: return "motyka";
    case Measure::Cosine: return "cosine";
    case Measure::Dice: return "dice";
    case Measure::Bhattacharyya: return "bhattacharyya";
    case Measure::Gower: return "gower";
    case Measure::Sorensen: return "sorensen";
  }
  return "unknown";
}

inline Measure parseMeasure(std::string_view name) {
  for (Measure m : kAllMeasures) {
    if (measureName(m) == name) return m;
  }
  throw Error("unknown distance measure: " + std::string(name));
}

constexpr std::string_view colorSpaceName(ColorSpace cs) {
  switch (cs) {
    case ColorSpace::None: return "none";
    case ColorSpace::Rgb: return "rgb";
    case ColorSpace::Yuv: return "yuv";
    case ColorSpace::Hsv: return "hsv";
  }
  return "unknown";
}

inline ColorSpace parseColorSpace(std::string_view name) {
  for (ColorSpace cs : kAllColorSpaces) {
    if (colorSpaceName(cs) == name) return cs;
  }
  throw Error("unknown color space: " + std::string(name));
}

// Dissimilarity between two non-negative histograms of equal length. Inputs
// are not required to sum to one; normalization guarantees (non-negativity,
// zero at identity) are stated for sum-to-one inputs.
template <typename DerivedP, typename DerivedQ>
typename DerivedP::Scalar histogramDistance(Measure m,
                                            const Eigen::MatrixBase<DerivedP>& p,
                                            const Eigen::MatrixBase<DerivedQ>& q) {
  using Scalar = typename DerivedP::Scalar;
  if (p.size() != q.size())
    throw LengthMismatch("histogram lengths differ: " + std::to_string(p.size()) +
                         " vs " + std::to_string(q.size()));
  if (p.size() == 0) throw LengthMismatch("histograms are empty");
  if ((p.array() < Scalar(0)).any() || (q.array() < Scalar(0)).any())
    throw NegativeBin("histogram has a negative entry");

  const auto pa = p.array();
  const auto qa = q.array();
  const Scalar eps = Scalar(kStabilizer);

  switch (m) {
    case Measure::Euclidean:
      return std::sqrt((pa - qa).square().sum());
    case Measure::Manhattan:
      return (pa - qa).abs().sum();
    case Measure::ChiSquared:
      return ((pa - qa).square() / (pa + qa + eps)).sum();
    case Measure::Pearson:
      return ((pa - qa).square() / (qa + eps)).sum();
    case Measure::Neyman:
      return ((pa - qa).square() / (pa + eps)).sum();
    case Measure::Canberra:
      return ((pa - qa).abs() / (pa + qa + eps)).sum();
    case Measure::KullbackLeibler:
      return (pa * ((pa + eps) / (qa + eps)).log()).sum();
    case Measure::SymmetricKullbackLeibler:
      return ((pa - qa) * ((pa + eps) / (qa + eps)).log()).sum();
    case Measure::Motyka:
      return pa.max(qa).sum() / std::max((pa + qa).sum(), eps);
    case Measure::Cosine: {
      const Scalar denom = std::sqrt(pa.square().sum() * qa.square().sum());
      return Scalar(1) - (pa * qa).sum() / std::max(denom, eps);
    }
    case Measure::Dice:
      return (pa - qa).square().sum() /
             std::max(pa.square().sum() + qa.square().sum(), eps);
    case Measure::Bhattacharyya:
      return -std::log(std::max((pa * qa).sqrt().sum(), eps));
    case Measure::Gower:
      return (pa - qa).abs().sum() / Scalar(p.size());
    case Measure::Sorensen:
      return (pa - qa).abs().sum() / std::max((pa + qa).sum(), eps);
  }
  throw Error("unhandled measure");
}

}  // namespace ortho
