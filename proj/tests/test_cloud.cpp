#include <doctest.h>

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <initializer_list>

#include "ortho/point_cloud.hpp"
#include "ortho/synthetic.hpp"

using ortho::PointCloud;
using ortho::SyntheticSpec;

namespace {

PointCloud cloudOf(std::initializer_list<std::array<double, 3>> pts) {
  PointCloud c;
  c.resize(static_cast<Eigen::Index>(pts.size()));
  Eigen::Index i = 0;
  for (const auto& p : pts) {
    c.positions.row(i) << p[0], p[1], p[2];
    c.colors.row(i).setZero();
    ++i;
  }
  return c;
}

}  // namespace

TEST_CASE("centroid and covariance on a hand example") {
  // Two symmetric pairs around the origin: covariance is diagonal with the
  // mean squared extents.
  auto c = cloudOf({{2, 0, 0}, {-2, 0, 0}, {0, 1, 0}, {0, -1, 0}});
  CHECK(ortho::centroid(c).norm() == doctest::Approx(0.0).epsilon(1e-15));
  const Eigen::Matrix3d cov = ortho::covariance(c);
  CHECK(cov(0, 0) == doctest::Approx(2.0));   // (4+4)/4
  CHECK(cov(1, 1) == doctest::Approx(0.5));   // (1+1)/4
  CHECK(cov(2, 2) == doctest::Approx(0.0));
  CHECK(cov(0, 1) == doctest::Approx(0.0));
}

TEST_CASE("centroid of an empty cloud throws") {
  PointCloud c;
  CHECK_THROWS_AS(ortho::centroid(c), ortho::EmptyCloud);
}

TEST_CASE("samePoints is bitwise and ignores metadata") {
  auto a = cloudOf({{1, 2, 3}, {4, 5, 6}});
  auto b = a;
  b.label = "other";
  CHECK(ortho::samePoints(a, b));
  b.positions(1, 2) = std::nextafter(b.positions(1, 2), 7.0);
  CHECK_FALSE(ortho::samePoints(a, b));
}

TEST_CASE("synthetic generation is a pure function of the seed") {
  SyntheticSpec spec;
  spec.shape = ortho::Shape::Box;
  spec.dims = {2.0, 1.0, 0.5};
  spec.count = 1000;
  spec.seed = 7;
  const auto a = ortho::generateSynthetic(spec);
  const auto b = ortho::generateSynthetic(spec);
  CHECK(ortho::samePoints(a, b));
  spec.seed = 8;
  CHECK_FALSE(ortho::samePoints(a, ortho::generateSynthetic(spec)));
}

TEST_CASE("sphere samples sit on the surface") {
  SyntheticSpec spec;
  spec.shape = ortho::Shape::Sphere;
  spec.dims = {1.0, 0, 0};
  spec.count = 10000;
  spec.seed = 3;
  const auto c = ortho::generateSynthetic(spec);
  for (Eigen::Index i = 0; i < c.size(); ++i)
    REQUIRE(std::abs(c.positions.row(i).norm() - 1.0) < 1e-9);
}

TEST_CASE("box sample variances follow the side lengths") {
  SyntheticSpec spec;
  spec.shape = ortho::Shape::Box;
  spec.dims = {2.0, 1.0, 0.5};
  spec.count = 20000;
  spec.seed = 1;
  const auto c = ortho::generateSynthetic(spec);
  const Eigen::Vector3d mean = c.positions.colwise().mean();
  const Eigen::Vector3d var =
      (c.positions.rowwise() - mean.transpose()).array().square().colwise().mean();
  CHECK(var[0] > var[1]);
  CHECK(var[1] > var[2]);
  // Extents match the requested box.
  CHECK(c.positions.col(0).maxCoeff() == doctest::Approx(1.0).epsilon(0.01));
  CHECK(c.positions.col(0).minCoeff() == doctest::Approx(-1.0).epsilon(0.01));
}

TEST_CASE("cylinder samples respect radius and height") {
  SyntheticSpec spec;
  spec.shape = ortho::Shape::Cylinder;
  spec.dims = {0.3, 1.2, 0};
  spec.count = 5000;
  spec.seed = 5;
  const auto c = ortho::generateSynthetic(spec);
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    const double rho = c.positions.row(i).head<2>().norm();
    REQUIRE(rho <= 0.3 + 1e-9);
    REQUIRE(std::abs(c.positions(i, 2)) <= 0.6 + 1e-9);
    // Interior points only occur on the caps.
    if (rho < 0.3 - 1e-9) REQUIRE(std::abs(std::abs(c.positions(i, 2)) - 0.6) < 1e-9);
  }
}

TEST_CASE("all generated points carry the requested color") {
  SyntheticSpec spec;
  spec.shape = ortho::Shape::Sphere;
  spec.dims = {0.1, 0, 0};
  spec.count = 50;
  spec.color << 12, 200, 34;
  const auto c = ortho::generateSynthetic(spec);
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    CHECK(c.colors(i, 0) == 12);
    CHECK(c.colors(i, 1) == 200);
    CHECK(c.colors(i, 2) == 34);
  }
}

TEST_CASE("invalid synthetic parameters are rejected") {
  SyntheticSpec spec;
  spec.dims = {1.0, -1.0, 1.0};
  CHECK_THROWS_AS(ortho::generateSynthetic(spec), ortho::InvalidDims);
  spec.dims = {1.0, 1.0, 1.0};
  spec.count = 2;
  CHECK_THROWS_AS(ortho::generateSynthetic(spec), ortho::InvalidSpec);
  spec.count = 10;
  spec.noise_sigma = -0.1;
  CHECK_THROWS_AS(ortho::generateSynthetic(spec), ortho::InvalidSpec);
}

TEST_CASE("noise perturbs points by roughly sigma") {
  SyntheticSpec spec;
  spec.shape = ortho::Shape::Sphere;
  spec.dims = {1.0, 0, 0};
  spec.count = 20000;
  spec.noise_sigma = 0.01;
  spec.seed = 2;
  const auto c = ortho::generateSynthetic(spec);
  double sum = 0, sumsq = 0;
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    const double d = c.positions.row(i).norm() - 1.0;
    sum += d;
    sumsq += d * d;
  }
  // Radial deviation of isotropic noise on a unit sphere is close to one
  // noise component.
  const double rms = std::sqrt(sumsq / c.size());
  CHECK(rms > 0.005);
  CHECK(rms < 0.02);
  CHECK(std::abs(sum / c.size()) < 0.002);
}
