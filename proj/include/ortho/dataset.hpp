#pragma once

#include <algorithm>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "ortho/descriptor.hpp"
#include "ortho/errors.hpp"
#include "ortho/pcd_io.hpp"

namespace ortho {

// Directory-backed dataset: <root>/<category>/<view>.pcd. The index lists only
// files that parse; unreadable or malformed ones are skipped and counted.
struct DatasetIndex {
  struct Category {
    std::string name;
    std::vector<std::filesystem::path> views;
  };
  std::vector<Category> categories;
  int warnings = 0;

  std::size_t viewCount() const {
    std::size_t n = 0;
    for (const auto& c : categories) n += c.views.size();
    return n;
  }
};

inline DatasetIndex indexDataset(const std::filesystem::path& root) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(root))
    throw EmptyDataset("dataset root is not a directory: " + root.string());

  DatasetIndex index;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (!entry.is_directory()) continue;
    DatasetIndex::Category cat;
    cat.name = entry.path().filename().string();
    for (const auto& file : fs::directory_iterator(entry.path())) {
      if (!file.is_regular_file() || file.path().extension() != ".pcd") continue;
      try {
        parsePcdFile(file.path());
        cat.views.push_back(file.path());
      } catch (const Error&) {
        ++index.warnings;
      }
    }
    // Sorted and deduplicated so the index never depends on filesystem
    // enumeration order.
    std::sort(cat.views.begin(), cat.views.end());
    cat.views.erase(std::unique(cat.views.begin(), cat.views.end()),
                    cat.views.end());
    if (!cat.views.empty()) index.categories.push_back(std::move(cat));
  }
  std::sort(index.categories.begin(), index.categories.end(),
            [](const auto& a, const auto& b) { return a.name < b.name; });
  if (index.categories.empty())
    throw EmptyDataset("no readable views under " + root.string());
  return index;
}

// A fully described dataset held in memory: the unit both evaluation
// harnesses operate on.
template <typename Scalar>
struct CategoryViewsT {
  std::string name;
  std::vector<ObjectRepresentationT<Scalar>> views;
};

using CategoryViews = CategoryViewsT<double>;

struct CategoryClouds {
  std::string name;
  std::vector<PointCloud> views;
};

inline std::vector<CategoryClouds> loadClouds(const DatasetIndex& index) {
  std::vector<CategoryClouds> out;
  out.reserve(index.categories.size());
  for (const auto& cat : index.categories) {
    CategoryClouds cc;
    cc.name = cat.name;
    cc.views.reserve(cat.views.size());
    for (const auto& path : cat.views) {
      PointCloud cloud = parsePcdFile(path);
      cloud.label = cat.name;
      cc.views.push_back(std::move(cloud));
    }
    out.push_back(std::move(cc));
  }
  return out;
}

inline std::vector<CategoryViews> describeClouds(
    const std::vector<CategoryClouds>& clouds, int bins_per_side) {
  std::vector<CategoryViews> out;
  out.reserve(clouds.size());
  for (const auto& cat : clouds) {
    CategoryViews cv;
    cv.name = cat.name;
    cv.views.reserve(cat.views.size());
    for (const auto& cloud : cat.views)
      cv.views.push_back(describe(cloud, bins_per_side));
    out.push_back(std::move(cv));
  }
  return out;
}

inline std::vector<CategoryViews> describeDataset(const DatasetIndex& index,
                                                  int bins_per_side) {
  return describeClouds(loadClouds(index), bins_per_side);
}

}  // namespace ortho
