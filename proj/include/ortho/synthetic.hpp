#pragma once

#include <Eigen/Core>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <istream>
#include <numbers>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ortho/errors.hpp"
#include "ortho/point_cloud.hpp"
#include "ortho/rng.hpp"

namespace ortho {

enum class Shape { Box, Cylinder, Sphere };

constexpr std::string_view shapeName(Shape s) {
  switch (s) {
    case Shape::Box: return "box";
    case Shape::Cylinder: return "cylinder";
    case Shape::Sphere: return "sphere";
  }
  return "unknown";
}

inline Shape parseShape(std::string_view name) {
  if (name == "box") return Shape::Box;
  if (name == "cylinder") return Shape::Cylinder;
  if (name == "sphere") return Shape::Sphere;
  throw InvalidSpec("unknown shape: " + std::string(name));
}

// Parameters for one generated cloud. dims holds full box side lengths
// (x, y, z), or (radius, height) for cylinders, or (radius) for spheres;
// unused entries are ignored.
struct SyntheticSpec {
  Shape shape = Shape::Box;
  Eigen::Vector3d dims = Eigen::Vector3d::Ones();
  Eigen::Matrix<std::uint8_t, 3, 1> color{128, 128, 128};
  int count = 1000;
  double noise_sigma = 0.0;
  std::uint64_t seed = 0;
};

namespace detail {

inline int usedDims(Shape s) {
  switch (s) {
    case Shape::Box: return 3;
    case Shape::Cylinder: return 2;
    case Shape::Sphere: return 1;
  }
  return 3;
}

}  // namespace detail

// Samples `count` points uniformly over the shape surface, then perturbs each
// coordinate with Gaussian noise. Pure in all arguments including the seed.
inline PointCloud generateSynthetic(const SyntheticSpec& spec) {
  for (int i = 0; i < detail::usedDims(spec.shape); ++i)
    if (!(spec.dims[i] > 0))
      throw InvalidDims("non-positive dimension " + std::to_string(spec.dims[i]));
  if (spec.count < 3)
    throw InvalidSpec("point count must be >= 3, got " + std::to_string(spec.count));
  if (spec.noise_sigma < 0)
    throw InvalidSpec("noise sigma must be >= 0");

  constexpr double two_pi = 2.0 * std::numbers::pi;
  SplitMix64 rng(spec.seed);
  PointCloud cloud;
  cloud.resize(spec.count);

  for (int i = 0; i < spec.count; ++i) {
    Eigen::Vector3d p;
    switch (spec.shape) {
      case Shape::Box: {
        const double a = spec.dims[0], b = spec.dims[1], c = spec.dims[2];
        // Faces weighted by area, paired per axis: +z, -z, +y, -y, +x, -x.
        const std::array<double, 6> areas = {a * b, a * b, a * c,
                                             a * c, b * c, b * c};
        double total = 0;
        for (double s : areas) total += s;
        double pick = rng.uniform() * total;
        int face = 0;
        while (face < 5 && pick >= areas[face]) pick -= areas[face], ++face;
        const double u = rng.uniform() - 0.5, v = rng.uniform() - 0.5;
        switch (face) {
          case 0: p = {u * a, v * b, c / 2}; break;
          case 1: p = {u * a, v * b, -c / 2}; break;
          case 2: p = {u * a, b / 2, v * c}; break;
          case 3: p = {u * a, -b / 2, v * c}; break;
          case 4: p = {a / 2, u * b, v * c}; break;
          default: p = {-a / 2, u * b, v * c}; break;
        }
        break;
      }
      case Shape::Cylinder: {
        const double r = spec.dims[0], h = spec.dims[1];
        const double lateral = two_pi * r * h;
        const double cap = std::numbers::pi * r * r;
        double pick = rng.uniform() * (lateral + 2 * cap);
        if (pick < lateral) {
          const double theta = two_pi * rng.uniform();
          const double z = (rng.uniform() - 0.5) * h;
          p = {r * std::cos(theta), r * std::sin(theta), z};
        } else {
          const double rho = r * std::sqrt(rng.uniform());
          const double theta = two_pi * rng.uniform();
          const double z = (pick < lateral + cap) ? h / 2 : -h / 2;
          p = {rho * std::cos(theta), rho * std::sin(theta), z};
        }
        break;
      }
      case Shape::Sphere: {
        const double r = spec.dims[0];
        const double z = 1.0 - 2.0 * rng.uniform();
        const double theta = two_pi * rng.uniform();
        const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
        p = {r * s * std::cos(theta), r * s * std::sin(theta), r * z};
        break;
      }
    }
    if (spec.noise_sigma > 0)
      for (int k = 0; k < 3; ++k) p[k] += spec.noise_sigma * rng.gaussian();
    cloud.positions.row(i) = p;
    cloud.colors.row(i) = spec.color.transpose();
  }
  return cloud;
}

// One dataset category worth of generated views. Each view v uses the seed
// stream derived from (seed, v), so adding views never reshuffles earlier
// ones.
struct CategorySpec {
  std::string name;
  SyntheticSpec base;
  int views = 10;
};

inline std::string viewName(int v) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "view_%03d", v);
  return buf;
}

inline std::vector<PointCloud> generateCategoryViews(const CategorySpec& spec) {
  std::vector<PointCloud> out;
  out.reserve(spec.views);
  for (int v = 0; v < spec.views; ++v) {
    SyntheticSpec one = spec.base;
    one.seed = deriveSeed(spec.base.seed, static_cast<std::uint64_t>(v));
    PointCloud cloud = generateSynthetic(one);
    cloud.label = spec.name;
    cloud.view_id = viewName(v);
    out.push_back(std::move(cloud));
  }
  return out;
}

namespace detail {

inline std::string trimCopy(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

}  // namespace detail

// Parses the dataset spec format used by gen-synthetic: INI-style sections,
// one per category, with flat key = value lines. Recognized keys: shape,
// dims, color, views, points, noise, seed. Unset seeds default to the
// category's position so sibling categories never share a stream.
//
//   [red_sphere]
//   shape = sphere
//   dims = 0.035
//   color = 220 30 30
//   views = 30
//   points = 1200
//   noise = 0.0015
inline std::vector<CategorySpec> parseDatasetSpec(std::istream& in) {
  std::vector<CategorySpec> specs;
  std::vector<bool> shape_set;
  std::string line;
  int line_no = 0;

  auto fail = [&](const std::string& what) {
    throw InvalidSpec("dataset spec line " + std::to_string(line_no) + ": " + what);
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = detail::trimCopy(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') fail("unterminated section header");
      std::string name = detail::trimCopy(line.substr(1, line.size() - 2));
      if (name.empty()) fail("empty category name");
      for (const auto& s : specs)
        if (s.name == name) fail("duplicate category " + name);
      CategorySpec spec;
      spec.name = name;
      spec.base.seed = specs.size();
      specs.push_back(std::move(spec));
      shape_set.push_back(false);
      continue;
    }

    if (specs.empty()) fail("key outside any [category] section");
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected key = value");
    const std::string key = detail::trimCopy(line.substr(0, eq));
    const std::string value = detail::trimCopy(line.substr(eq + 1));
    if (value.empty()) fail("empty value for " + key);
    CategorySpec& spec = specs.back();
    std::istringstream vs(value);

    if (key == "shape") {
      spec.base.shape = parseShape(value);
      shape_set.back() = true;
    } else if (key == "dims") {
      std::vector<double> dims;
      double d;
      while (vs >> d) dims.push_back(d);
      if (!vs.eof() || dims.empty() || dims.size() > 3)
        fail("dims wants 1 to 3 reals");
      for (std::size_t i = 0; i < dims.size(); ++i) spec.base.dims[i] = dims[i];
    } else if (key == "color") {
      int r, g, b;
      if (!(vs >> r >> g >> b) || !(vs >> std::ws).eof()) fail("color wants 3 integers");
      if (r < 0 || r > 255 || g < 0 || g > 255 || b < 0 || b > 255)
        fail("color channels must be in [0,255]");
      spec.base.color << static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g),
          static_cast<std::uint8_t>(b);
    } else if (key == "views") {
      if (!(vs >> spec.views) || !(vs >> std::ws).eof() || spec.views < 1)
        fail("views wants a positive integer");
    } else if (key == "points") {
      if (!(vs >> spec.base.count) || !(vs >> std::ws).eof() || spec.base.count < 3)
        fail("points wants an integer >= 3");
    } else if (key == "noise") {
      if (!(vs >> spec.base.noise_sigma) || !(vs >> std::ws).eof() ||
          spec.base.noise_sigma < 0)
        fail("noise wants a non-negative real");
    } else if (key == "seed") {
      if (!(vs >> spec.base.seed) || !(vs >> std::ws).eof()) fail("seed wants an integer");
    } else {
      fail("unknown key " + key);
    }
  }

  if (specs.empty()) throw InvalidSpec("dataset spec declares no categories");
  for (std::size_t i = 0; i < specs.size(); ++i) {
    if (!shape_set[i]) throw InvalidSpec("category " + specs[i].name + " has no shape");
    // Re-run dimension validation here so a bad spec names its category
    // instead of failing later mid-generation.
    for (int d = 0; d < detail::usedDims(specs[i].base.shape); ++d)
      if (!(specs[i].base.dims[d] > 0))
        throw InvalidSpec("category " + specs[i].name + " has non-positive dims");
  }
  return specs;
}

}  // namespace ortho
