#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ortho/errors.hpp"
#include "ortho/metric.hpp"

namespace ortho {

// A category is the ordered set of object views stored for it: the initial
// teaching views first, then any corrections in the order they happened.
template <typename Scalar>
struct CategoryModelT {
  std::string name;
  std::vector<ObjectRepresentationT<Scalar>> instances;
};

template <typename Scalar>
struct ClassificationT {
  std::string label;
  Scalar distance = Scalar(0);
  std::size_t category_index = 0;
  std::size_t instance_index = 0;
};

// Instance-based perceptual memory with a fixed metric and exact 1-NN
// recognition by linear scan. Categories keep their teaching order, which is
// also the tie-break order for equal distances.
template <typename Scalar>
class MemoryT {
 public:
  explicit MemoryT(MetricSpecT<Scalar> metric = {}) : metric_(metric) {}

  const MetricSpecT<Scalar>& metric() const { return metric_; }
  const std::vector<CategoryModelT<Scalar>>& categories() const {
    return categories_;
  }

  bool knows(const std::string& name) const { return find(name) != nullptr; }

  const CategoryModelT<Scalar>* find(const std::string& name) const {
    for (const auto& c : categories_)
      if (c.name == name) return &c;
    return nullptr;
  }

  std::size_t instanceCount() const {
    std::size_t total = 0;
    for (const auto& c : categories_) total += c.instances.size();
    return total;
  }

  // Stores views under the given name, creating the category on first use and
  // appending on repeats (corrections reuse this path).
  void teach(const std::string& name,
             const std::vector<ObjectRepresentationT<Scalar>>& views) {
    if (views.empty()) throw EmptyViews("teach called with no views: " + name);
    CategoryModelT<Scalar>* model = nullptr;
    for (auto& c : categories_)
      if (c.name == name) model = &c;
    if (!model) {
      categories_.push_back({name, {}});
      model = &categories_.back();
    }
    model->instances.insert(model->instances.end(), views.begin(), views.end());
  }

  void teach(const std::string& name, const ObjectRepresentationT<Scalar>& view) {
    teach(name, std::vector<ObjectRepresentationT<Scalar>>{view});
  }

  // Exact nearest neighbor over every stored instance. Ties go to the
  // earlier-taught category, then the earlier-stored instance, which the
  // strict less-than comparison yields for free in scan order.
  ClassificationT<Scalar> classify(const ObjectRepresentationT<Scalar>& query) const {
    bool found = false;
    ClassificationT<Scalar> best;
    for (std::size_t ci = 0; ci < categories_.size(); ++ci) {
      const auto& cat = categories_[ci];
      for (std::size_t ii = 0; ii < cat.instances.size(); ++ii) {
        const Scalar d = combinedDistance(metric_, query, cat.instances[ii]);
        if (!found || d < best.distance) {
          found = true;
          best = {cat.name, d, ci, ii};
        }
      }
    }
    if (!found) throw EmptyMemory("classify on empty memory");
    return best;
  }

 private:
  MetricSpecT<Scalar> metric_;
  std::vector<CategoryModelT<Scalar>> categories_;
};

using CategoryModel = CategoryModelT<double>;
using Classification = ClassificationT<double>;
using Memory = MemoryT<double>;

}  // namespace ortho
