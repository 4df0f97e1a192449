#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ortho/dataset.hpp"
#include "ortho/errors.hpp"
#include "ortho/learner.hpp"
#include "ortho/rng.hpp"

namespace ortho {

struct ProtocolConfig {
  double tau = 0.8;          // accuracy the teacher demands before moving on
  int window_factor = 3;     // window is window_factor * categories-known asks
  int breakpoint_limit = 100;  // asks since last introduction before giving up
  int teach_views = 3;
  std::uint64_t seed = 0;
};

enum class StopReason { LackOfData, Breakpoint };

constexpr std::string_view stopReasonName(StopReason r) {
  return r == StopReason::LackOfData ? "lack_of_data" : "breakpoint";
}

enum class EventKind { Introduce, Teach, Ask, Correct, Stop };

constexpr std::string_view eventKindName(EventKind k) {
  switch (k) {
    case EventKind::Introduce: return "introduce";
    case EventKind::Teach: return "teach";
    case EventKind::Ask: return "ask";
    case EventKind::Correct: return "correct";
    case EventKind::Stop: return "stop";
  }
  return "unknown";
}

// One step of the teaching dialogue. `iteration` is the number of asks that
// have happened so far (the QCI clock). Ask events carry the prediction, its
// correctness, and the window accuracy recorded right after the ask; other
// kinds leave those fields at their defaults. Stop events reuse `category`
// for the reason token.
struct TraceEvent {
  int iteration = 0;
  EventKind kind = EventKind::Ask;
  std::string category;
  std::string view_id;
  std::string predicted;
  bool correct = false;
  double accuracy = -1.0;
};

struct ExperimentReport {
  int qci = 0;        // question/correction iterations (= asks)
  int nlc = 0;        // number of learned categories (= introductions)
  double aic = 0.0;   // average instances per learned category at the end
  double gca = 0.0;   // correct asks / all asks
  double apa = 0.0;   // mean of every recorded window accuracy
  StopReason stop_reason = StopReason::LackOfData;
  std::vector<TraceEvent> trace;
};

// Accuracy over the most recent min(window_factor * n_known, k) asks, where k
// is how many asks happened since the last introduction. The short-window
// branch covers the start of each stage, when fewer than a full window of
// results exist.
inline double protocolAccuracy(const std::vector<bool>& results_since_introduction,
                               int n_known, int window_factor) {
  const std::size_t k = results_since_introduction.size();
  if (k == 0) throw EmptyWindow("protocol accuracy needs at least one ask");
  const std::size_t window =
      std::min<std::size_t>(static_cast<std::size_t>(window_factor) *
                                static_cast<std::size_t>(n_known),
                            k);
  std::size_t correct = 0;
  for (std::size_t i = k - window; i < k; ++i)
    correct += results_since_introduction[i] ? 1 : 0;
  return static_cast<double>(correct) / static_cast<double>(window);
}

// The simulated-teacher loop. The recognizer maps (memory, query) to a
// predicted label; production runs pass nearest-neighbor classification,
// while tests may script it. Identical inputs and seed give identical traces.
//
// Each iteration first checks the introduction gate (a full window of asks
// since the last introduction with accuracy strictly above tau), then the
// breakpoint, then asks about a never-before-used view of a known category
// picked uniformly at random. Wrong answers are corrected by storing the
// asked view. The run stops with LackOfData when no unseen category remains
// at an introduction or no known category has unused views at an ask, and
// with Breakpoint when breakpoint_limit asks pass without an introduction.
template <typename Scalar, typename Recognizer>
ExperimentReport runOpenEnded(const std::vector<CategoryViewsT<Scalar>>& dataset,
                              const MetricSpecT<Scalar>& metric,
                              const ProtocolConfig& cfg, Recognizer&& recognize) {
  if (dataset.empty()) throw EmptyDataset("open-ended run over an empty dataset");
  if (!(cfg.tau > 0.0) || cfg.tau > 1.0)
    throw InvalidSpec("tau must be in (0,1]");
  if (cfg.window_factor < 1) throw InvalidSpec("window factor must be >= 1");
  if (cfg.breakpoint_limit < 1) throw InvalidSpec("breakpoint limit must be >= 1");
  if (cfg.teach_views < 1) throw InvalidSpec("teach views must be >= 1");

  SplitMix64 rng(cfg.seed);
  std::vector<std::size_t> intro_order(dataset.size());
  std::iota(intro_order.begin(), intro_order.end(), std::size_t{0});
  shuffle(intro_order, rng);

  std::vector<std::vector<bool>> used(dataset.size());
  for (std::size_t c = 0; c < dataset.size(); ++c)
    used[c].assign(dataset[c].views.size(), false);

  MemoryT<Scalar> memory(metric);
  ExperimentReport report;
  std::vector<std::size_t> known;           // dataset indices, introduction order
  std::vector<bool> stage_results;          // ask results since last introduction
  std::vector<double> recorded_accuracies;  // one entry per ask, feeds APA
  std::size_t next_intro = 0;
  int asks = 0;
  int asks_since_intro = 0;

  auto unusedViews = [&](std::size_t c) {
    std::vector<std::size_t> idx;
    for (std::size_t v = 0; v < used[c].size(); ++v)
      if (!used[c][v]) idx.push_back(v);
    return idx;
  };

  auto introduce = [&]() {
    if (next_intro == intro_order.size()) return false;
    const std::size_t c = intro_order[next_intro++];
    const auto& cat = dataset[c];
    auto candidates = unusedViews(c);
    shuffle(candidates, rng);
    const std::size_t take = std::min<std::size_t>(
        static_cast<std::size_t>(cfg.teach_views), candidates.size());
    report.trace.push_back({asks, EventKind::Introduce, cat.name, "", "", false, -1.0});
    for (std::size_t i = 0; i < take; ++i) {
      const std::size_t v = candidates[i];
      used[c][v] = true;
      memory.teach(cat.name, cat.views[v]);
      report.trace.push_back(
          {asks, EventKind::Teach, cat.name, cat.views[v].view_id, "", false, -1.0});
    }
    known.push_back(c);
    ++report.nlc;
    asks_since_intro = 0;
    stage_results.clear();
    return true;
  };

  auto finish = [&](StopReason reason) {
    report.stop_reason = reason;
    report.trace.push_back({asks, EventKind::Stop, std::string(stopReasonName(reason)),
                            "", "", false, -1.0});
    report.qci = asks;
    int correct_total = 0;
    for (const auto& e : report.trace)
      if (e.kind == EventKind::Ask && e.correct) ++correct_total;
    report.gca = asks > 0 ? static_cast<double>(correct_total) / asks : 0.0;
    report.apa = recorded_accuracies.empty()
                     ? 0.0
                     : std::accumulate(recorded_accuracies.begin(),
                                       recorded_accuracies.end(), 0.0) /
                           static_cast<double>(recorded_accuracies.size());
    const auto& cats = memory.categories();
    if (!cats.empty()) {
      double total = 0;
      for (const auto& c : cats) total += static_cast<double>(c.instances.size());
      report.aic = total / static_cast<double>(cats.size());
    }
    return report;
  };

  introduce();  // dataset is non-empty, the first introduction always succeeds

  for (;;) {
    const int n_known = static_cast<int>(known.size());
    if (asks_since_intro >= cfg.window_factor * n_known && !stage_results.empty() &&
        protocolAccuracy(stage_results, n_known, cfg.window_factor) > cfg.tau) {
      if (!introduce()) return finish(StopReason::LackOfData);
      continue;
    }
    if (asks_since_intro >= cfg.breakpoint_limit)
      return finish(StopReason::Breakpoint);

    // Ask about a fresh view of a known category, uniform over those that
    // still have one.
    std::vector<std::size_t> askable;
    for (std::size_t c : known)
      if (!unusedViews(c).empty()) askable.push_back(c);
    if (askable.empty()) return finish(StopReason::LackOfData);
    const std::size_t c = askable[rng.below(askable.size())];
    const auto views = unusedViews(c);
    const std::size_t v = views[rng.below(views.size())];
    used[c][v] = true;
    const auto& query = dataset[c].views[v];

    const std::string predicted = recognize(memory, query);
    const bool correct = predicted == dataset[c].name;
    ++asks;
    ++asks_since_intro;
    stage_results.push_back(correct);
    const double acc = protocolAccuracy(stage_results, n_known, cfg.window_factor);
    recorded_accuracies.push_back(acc);
    report.trace.push_back({asks, EventKind::Ask, dataset[c].name, query.view_id,
                            predicted, correct, acc});
    if (!correct) {
      memory.teach(dataset[c].name, query);
      report.trace.push_back(
          {asks, EventKind::Correct, dataset[c].name, query.view_id, "", false, -1.0});
    }
  }
}

template <typename Scalar>
ExperimentReport runOpenEnded(const std::vector<CategoryViewsT<Scalar>>& dataset,
                              const MetricSpecT<Scalar>& metric,
                              const ProtocolConfig& cfg) {
  return runOpenEnded(dataset, metric, cfg,
                      [](const MemoryT<Scalar>& mem,
                         const ObjectRepresentationT<Scalar>& query) {
                        return mem.classify(query).label;
                      });
}

struct FoldReport {
  int folds = 0;
  std::vector<double> fold_accuracy;  // skips folds with no held-out views
  double mean_accuracy = 0.0;
  double time_seconds = 0.0;
  std::vector<std::string> single_view_categories;  // always trained, never tested
};

// Stratified k-fold cross-validation: every category's views are shuffled
// with a seed derived per category, then dealt round-robin over the folds, so
// each fold holds a proportional slice of every category. Single-view
// categories stay in training for every fold and are flagged.
template <typename Scalar>
FoldReport runKFold(const std::vector<CategoryViewsT<Scalar>>& dataset,
                    const MetricSpecT<Scalar>& metric, int k, std::uint64_t seed) {
  if (dataset.empty()) throw EmptyDataset("k-fold over an empty dataset");
  if (k < 2) throw TooFewViews("k-fold needs k >= 2, got " + std::to_string(k));

  const auto start = std::chrono::steady_clock::now();
  FoldReport report;
  report.folds = k;

  // fold_of[c][v] is the fold holding view v of category c, or -1 for views
  // of single-view categories, which never leave the training side.
  std::vector<std::vector<int>> fold_of(dataset.size());
  for (std::size_t c = 0; c < dataset.size(); ++c) {
    const std::size_t m = dataset[c].views.size();
    fold_of[c].assign(m, -1);
    if (m < 2) {
      report.single_view_categories.push_back(dataset[c].name);
      continue;
    }
    std::vector<std::size_t> idx(m);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    SplitMix64 rng(deriveSeed(seed, static_cast<std::uint64_t>(c)));
    shuffle(idx, rng);
    for (std::size_t j = 0; j < m; ++j)
      fold_of[c][idx[j]] = static_cast<int>(j % static_cast<std::size_t>(k));
  }

  bool any_tested = false;
  for (int f = 0; f < k; ++f) {
    MemoryT<Scalar> memory(metric);
    for (std::size_t c = 0; c < dataset.size(); ++c) {
      std::vector<ObjectRepresentationT<Scalar>> train;
      for (std::size_t v = 0; v < dataset[c].views.size(); ++v)
        if (fold_of[c][v] != f) train.push_back(dataset[c].views[v]);
      if (!train.empty()) memory.teach(dataset[c].name, train);
    }
    std::size_t tested = 0, correct = 0;
    for (std::size_t c = 0; c < dataset.size(); ++c)
      for (std::size_t v = 0; v < dataset[c].views.size(); ++v)
        if (fold_of[c][v] == f) {
          ++tested;
          if (memory.classify(dataset[c].views[v]).label == dataset[c].name)
            ++correct;
        }
    if (tested == 0) continue;  // more folds than views, nothing held out here
    any_tested = true;
    report.fold_accuracy.push_back(static_cast<double>(correct) /
                                   static_cast<double>(tested));
  }
  if (!any_tested)
    throw TooFewViews("no category has enough views to hold any out");

  report.mean_accuracy =
      std::accumulate(report.fold_accuracy.begin(), report.fold_accuracy.end(), 0.0) /
      static_cast<double>(report.fold_accuracy.size());
  report.time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace ortho
