#include <doctest.h>

#include <Eigen/Core>
#include <cmath>
#include <utility>
#include <vector>

#include "ortho/distance.hpp"
#include "ortho/metric.hpp"
#include "ortho/rng.hpp"

using ortho::ColorSpace;
using ortho::Measure;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

Eigen::VectorXd randomHistogram(ortho::SplitMix64& rng, Eigen::Index size,
                                double zero_fraction = 0.25) {
  Eigen::VectorXd v(size);
  for (Eigen::Index i = 0; i < size; ++i)
    v[i] = rng.uniform() < zero_fraction ? 0.0 : rng.uniform();
  const double sum = v.sum();
  if (sum > 0) v /= sum;
  else v[0] = 1.0;
  return v;
}

// Minimal representation carrying just what the metric layer reads.
ortho::ObjectRepresentation repOf(std::initializer_list<double> shape_bins,
                                  Eigen::Vector3d rgb, Eigen::Vector3d yuv,
                                  Eigen::Vector3d hsv) {
  ortho::ObjectRepresentation rep;
  rep.shape.bins_per_side = 1;
  rep.shape.values = vec(shape_bins);
  rep.color_rgb = std::move(rgb);
  rep.color_yuv = std::move(yuv);
  rep.color_hsv = std::move(hsv);
  return rep;
}

}  // namespace

TEST_CASE("all fourteen measures match hand-computed values") {
  // Oracle values computed independently (arbitrary-order summation agrees to
  // well under the tolerance) for P = [.1,.4,.5], Q = [.3,.3,.4].
  const Eigen::VectorXd P = vec({0.1, 0.4, 0.5});
  const Eigen::VectorXd Q = vec({0.3, 0.3, 0.4});

  const std::pair<Measure, double> expected[] = {
      {Measure::Euclidean, 0.2449489742783178},
      {Measure::Manhattan, 0.4},
      {Measure::ChiSquared, 0.12539682536854999},
      {Measure::Pearson, 0.19166666660486112},
      {Measure::Neyman, 0.44499999958974995},
      {Measure::Canberra, 0.7539682538105},
      {Measure::KullbackLeibler, 0.11678337577933964},
      {Measure::SymmetricKullbackLeibler, 0.2708050199635544},
      {Measure::Motyka, 0.6},
      {Measure::Cosine, 0.07380178295631457},
      {Measure::Dice, 0.07894736842105263},
      {Measure::Bhattacharyya, 0.03373380253536779},
      {Measure::Gower, 0.13333333333333333},
      {Measure::Sorensen, 0.2},
  };
  for (const auto& [m, want] : expected) {
    CAPTURE(ortho::measureName(m));
    CHECK(std::abs(ortho::histogramDistance(m, P, Q) - want) < 1e-12);
  }

  CHECK(ortho::histogramDistance(Measure::Manhattan, vec({0.2, 0.8}),
                                 vec({0.5, 0.5})) ==
        doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("identity values on sum-to-one histograms") {
  ortho::SplitMix64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::VectorXd P = randomHistogram(rng, 27);
    for (Measure m : ortho::kAllMeasures) {
      CAPTURE(ortho::measureName(m));
      const double d = ortho::histogramDistance(m, P, P);
      if (m == Measure::Motyka) {
        CHECK(d == doctest::Approx(0.5).epsilon(1e-12));
      } else if (m == Measure::Bhattacharyya) {
        // -log(sum of bins) stays near zero only because P sums to one.
        CHECK(std::abs(d) < 1e-9);
      } else {
        CHECK(std::abs(d) < 1e-9);
      }
    }
  }
}

TEST_CASE("symmetric measures commute, directional ones do not") {
  const Measure symmetric[] = {
      Measure::Euclidean, Measure::Manhattan, Measure::ChiSquared,
      Measure::Canberra,  Measure::SymmetricKullbackLeibler,
      Measure::Motyka,    Measure::Cosine,    Measure::Dice,
      Measure::Bhattacharyya, Measure::Gower, Measure::Sorensen,
  };
  ortho::SplitMix64 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    const Eigen::VectorXd P = randomHistogram(rng, 12);
    const Eigen::VectorXd Q = randomHistogram(rng, 12);
    for (Measure m : symmetric) {
      CAPTURE(ortho::measureName(m));
      CHECK(std::abs(ortho::histogramDistance(m, P, Q) -
                     ortho::histogramDistance(m, Q, P)) <= 1e-12);
    }
  }

  const Eigen::VectorXd P = vec({0.1, 0.4, 0.5});
  const Eigen::VectorXd Q = vec({0.3, 0.3, 0.4});
  CHECK(std::abs(ortho::histogramDistance(Measure::Pearson, Q, P) -
                 0.44499999958974995) < 1e-12);
  CHECK(std::abs(ortho::histogramDistance(Measure::Neyman, Q, P) -
                 0.19166666660486112) < 1e-12);
  CHECK(std::abs(ortho::histogramDistance(Measure::KullbackLeibler, Q, P) -
                 0.15402164418421468) < 1e-12);
  CHECK(ortho::histogramDistance(Measure::Pearson, P, Q) !=
        ortho::histogramDistance(Measure::Pearson, Q, P));
}

TEST_CASE("distances stay above their negative floors") {
  ortho::SplitMix64 rng(123);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::VectorXd P = randomHistogram(rng, 48, 0.5);
    const Eigen::VectorXd Q = randomHistogram(rng, 48, 0.5);
    for (Measure m : ortho::kAllMeasures) {
      CAPTURE(ortho::measureName(m));
      const double d = ortho::histogramDistance(m, P, Q);
      // KL can dip slightly negative through the stabilizer when p has mass
      // where q is zero-heavy; everything else only by rounding.
      const double floor = m == Measure::KullbackLeibler ? -1e-7 : -1e-12;
      CHECK(d >= floor);
      CHECK(std::isfinite(d));
    }
  }
}

TEST_CASE("histogram validation rejects bad inputs") {
  const Eigen::VectorXd P = vec({0.5, 0.5});
  CHECK_THROWS_AS(
      ortho::histogramDistance(Measure::Manhattan, P, vec({1.0, 0.0, 0.0})),
      ortho::LengthMismatch);
  CHECK_THROWS_AS(ortho::histogramDistance(Measure::Manhattan, Eigen::VectorXd(),
                                           Eigen::VectorXd()),
                  ortho::LengthMismatch);
  CHECK_THROWS_AS(
      ortho::histogramDistance(Measure::Manhattan, P, vec({1.2, -0.2})),
      ortho::NegativeBin);
  CHECK_THROWS_AS(ortho::parseMeasure("mahalanobis"), ortho::Error);
  CHECK(ortho::parseMeasure("chi2") == Measure::ChiSquared);
  for (Measure m : ortho::kAllMeasures)
    CHECK(ortho::parseMeasure(std::string(ortho::measureName(m))) == m);
}

TEST_CASE("hsv dissimilarity wraps hue and caps at three") {
  ortho::MetricSpec spec;
  spec.color_space = ColorSpace::Hsv;

  auto hsvRep = [](double h, double s, double v) {
    return repOf({1.0}, {0, 0, 0}, {0, 0, 0}, {h, s, v});
  };

  // 350 and 10 degrees are 20 degrees apart through the wrap.
  CHECK(std::abs(ortho::colorDistance(spec, hsvRep(350, 0.5, 0.5),
                                      hsvRep(10, 0.5, 0.5)) -
                 20.0 / 180.0) < 1e-9);
  // Antipodal hue plus full saturation and value spread hits the cap.
  CHECK(ortho::colorDistance(spec, hsvRep(0, 0, 0), hsvRep(180, 1, 1)) ==
        doctest::Approx(3.0).epsilon(1e-12));
  // Shifting both hues together changes nothing.
  const double base = ortho::colorDistance(spec, hsvRep(40, 0.2, 0.7),
                                           hsvRep(90, 0.6, 0.4));
  const double shifted = ortho::colorDistance(spec, hsvRep(240, 0.2, 0.7),
                                              hsvRep(290, 0.6, 0.4));
  CHECK(std::abs(base - shifted) < 1e-12);
  CHECK(ortho::colorDistance(spec, hsvRep(123, 0.4, 0.9), hsvRep(123, 0.4, 0.9)) ==
        0.0);
}

TEST_CASE("combined distance blends shape and color by weight") {
  // Shape term: Manhattan([.2,.8],[.4,.6]) = 0.4.
  // Color term (hsv): 18/180 + 0 + 0.1 = 0.2.
  const auto p = repOf({0.2, 0.8}, {0.1, 0.1, 0.1}, {0.2, 0.2, 0.2},
                       {0.0, 0.5, 0.5});
  const auto q = repOf({0.4, 0.6}, {0.3, 0.1, 0.1}, {0.2, 0.4, 0.2},
                       {18.0, 0.5, 0.6});

  ortho::MetricSpec spec;
  spec.base = Measure::Manhattan;
  spec.color_space = ColorSpace::Hsv;

  spec.color_weight = 0.0;
  CHECK(ortho::combinedDistance(spec, p, q) ==
        doctest::Approx(0.4).epsilon(1e-12));
  spec.color_weight = 1.0;
  CHECK(ortho::combinedDistance(spec, p, q) ==
        doctest::Approx(0.2).epsilon(1e-12));
  spec.color_weight = 0.5;
  CHECK(ortho::combinedDistance(spec, p, q) ==
        doctest::Approx(0.3).epsilon(1e-12));

  // RGB and YUV color terms reuse the base measure on the stored 3-vectors.
  spec.color_space = ColorSpace::Rgb;
  CHECK(ortho::colorDistance(spec, p, q) == doctest::Approx(0.2).epsilon(1e-12));
  spec.color_space = ColorSpace::Yuv;
  CHECK(ortho::colorDistance(spec, p, q) == doctest::Approx(0.2).epsilon(1e-12));

  // Without a color space the blend degenerates to pure shape no matter w,
  // and asking for the color term alone is an error.
  spec.color_space = ColorSpace::None;
  spec.color_weight = 0.7;
  CHECK(ortho::combinedDistance(spec, p, q) ==
        doctest::Approx(0.4).epsilon(1e-12));
  CHECK_THROWS_AS(ortho::colorDistance(spec, p, q), ortho::MissingColorSpace);
}
