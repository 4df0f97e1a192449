#include <doctest.h>

#include <Eigen/Dense>
#include <Eigen/Geometry>
#include <cmath>

#include "ortho/frame.hpp"
#include "ortho/rng.hpp"
#include "ortho/synthetic.hpp"

using ortho::PointCloud;

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

TEST_CASE("frame of an axis-aligned symmetric cloud") {
  // Symmetric pairs on each axis: covariance is diag(4/3, 1/3, 1/12), the
  // eigenvectors are the coordinate axes, and the projection votes tie.
  auto c = cloudOf({{2, 0, 0}, {-2, 0, 0}, {0, 1, 0}, {0, -1, 0},
                    {0, 0, 0.5}, {0, 0, -0.5}});
  const ortho::ReferenceFrame f = ortho::computeReferenceFrame(c);

  CHECK(f.origin.norm() < 1e-12);
  CHECK(f.eigenvalues[0] == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  CHECK(f.eigenvalues[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(f.eigenvalues[2] == doctest::Approx(1.0 / 12.0).epsilon(1e-12));

  CHECK(std::abs(std::abs(f.x().dot(Eigen::Vector3d::UnitX())) - 1.0) < 1e-9);
  CHECK(std::abs(std::abs(f.y().dot(Eigen::Vector3d::UnitY())) - 1.0) < 1e-9);
  CHECK(std::abs(std::abs(f.z().dot(Eigen::Vector3d::UnitZ())) - 1.0) < 1e-9);
}

TEST_CASE("axes are orthonormal and right-handed") {
  ortho::SyntheticSpec spec;
  spec.shape = ortho::Shape::Box;
  spec.dims = {0.3, 0.2, 0.1};
  spec.count = 500;
  spec.noise_sigma = 0.002;
  spec.seed = 21;
  const auto c = ortho::generateSynthetic(spec);
  const auto f = ortho::computeReferenceFrame(c);

  const Eigen::Matrix3d gram = f.axes.transpose() * f.axes;
  CHECK((gram - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-9);
  CHECK(f.axes.determinant() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK((f.z() - f.x().cross(f.y())).norm() < 1e-12);
  CHECK(f.eigenvalues[0] >= f.eigenvalues[1]);
  CHECK(f.eigenvalues[1] >= f.eigenvalues[2]);
}

TEST_CASE("sign disambiguation points axes at the heavier side") {
  ortho::SplitMix64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    PointCloud c;
    c.resize(101);
    for (Eigen::Index i = 0; i < c.size(); ++i)
      c.positions.row(i) << 3.0 * rng.gaussian() + 0.4, rng.gaussian(),
          0.3 * rng.gaussian();
    c.colors.setZero();
    const auto f = ortho::computeReferenceFrame(c);
    const auto centered = (c.positions.rowwise() - f.origin.transpose()).eval();
    for (int axis = 0; axis < 2; ++axis) {
      const Eigen::VectorXd proj = centered * f.axes.col(axis);
      int pos = 0, neg = 0;
      for (Eigen::Index i = 0; i < proj.size(); ++i) {
        if (proj[i] > 0) ++pos;
        if (proj[i] < 0) ++neg;
      }
      REQUIRE(pos >= neg);
    }
  }
}

TEST_CASE("frame rotates with the cloud") {
  ortho::SyntheticSpec spec;
  spec.shape = ortho::Shape::Box;
  spec.dims = {0.4, 0.25, 0.1};
  spec.count = 400;
  spec.noise_sigma = 0.003;
  spec.seed = 33;
  const auto c = ortho::generateSynthetic(spec);
  const auto f = ortho::computeReferenceFrame(c);

  const Eigen::Matrix3d rot =
      Eigen::AngleAxisd(0.83, Eigen::Vector3d(1, 2, -1).normalized())
          .toRotationMatrix();
  PointCloud moved = c;
  moved.positions = (c.positions * rot.transpose()).eval();
  moved.positions.rowwise() += Eigen::RowVector3d(0.5, -1.0, 2.0);
  const auto g = ortho::computeReferenceFrame(moved);

  CHECK((g.axes - rot * f.axes).cwiseAbs().maxCoeff() < 1e-9);
  CHECK((g.eigenvalues - f.eigenvalues).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("degenerate clouds are rejected") {
  SUBCASE("fewer than three points") {
    auto c = cloudOf({{0, 0, 0}, {1, 0, 0}});
    CHECK_THROWS_AS(ortho::computeReferenceFrame(c), ortho::DegenerateCloud);
  }
  SUBCASE("collinear points") {
    auto c = cloudOf({{0, 0, 0}, {1, 1, 1}, {2, 2, 2}, {3, 3, 3}});
    CHECK_THROWS_AS(ortho::computeReferenceFrame(c), ortho::DegenerateCloud);
  }
  SUBCASE("all points identical") {
    auto c = cloudOf({{1, 2, 3}, {1, 2, 3}, {1, 2, 3}});
    CHECK_THROWS_AS(ortho::computeReferenceFrame(c), ortho::DegenerateCloud);
  }
  SUBCASE("thin but honest spread passes") {
    auto c = cloudOf({{1, 1e-3, 0}, {1, -1e-3, 0}, {-1, 1e-3, 0}, {-1, -1e-3, 0}});
    CHECK_NOTHROW(ortho::computeReferenceFrame(c));
  }
}
