#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ortho/descriptor.hpp"
#include "ortho/learner.hpp"
#include "ortho/protocol.hpp"

namespace ortho {

inline constexpr std::string_view kToolVersion = "0.1.0";

// Shortest decimal form that parses back to the identical double, so CSV and
// JSON carry bit-equal values.
inline std::string formatReal(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

inline std::string csvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

// Every emitted CSV starts with one comment line recording the tool version
// and the fully resolved invocation, so a file identifies the run that made
// it without affecting the tabular schema.
inline void writeSchemaComment(std::ostream& os, const std::string& invocation) {
  os << "# ortho " << kToolVersion << " " << invocation << "\n";
}

inline std::string planeOrderToken(const std::array<Plane, 3>& order) {
  std::string out;
  for (int i = 0; i < 3; ++i) {
    if (i) out += '|';
    out += planeName(order[i]);
  }
  return out;
}

inline std::array<Plane, 3> parsePlaneOrderToken(const std::string& token) {
  std::array<Plane, 3> order = kCanonicalPlanes;
  std::size_t begin = 0;
  for (int i = 0; i < 3; ++i) {
    const std::size_t end = token.find('|', begin);
    const std::string part = token.substr(
        begin, end == std::string::npos ? std::string::npos : end - begin);
    order[i] = parsePlane(part);
    begin = end == std::string::npos ? token.size() : end + 1;
  }
  return order;
}

// --- object representations ---------------------------------------------

inline void writeRepresentationCsvHeader(std::ostream& os, int bins_per_side) {
  os << "bins,plane_order";
  const int cells = 3 * bins_per_side * bins_per_side;
  for (int i = 0; i < cells; ++i) os << ",shape_" << i;
  os << ",rgb_r,rgb_g,rgb_b,yuv_y,yuv_u,yuv_v,hsv_h,hsv_s,hsv_v,label,view_id\n";
}

inline void writeRepresentationCsvRow(std::ostream& os,
                                      const ObjectRepresentation& rep) {
  os << rep.shape.bins_per_side << ',' << planeOrderToken(rep.shape.plane_order);
  for (Eigen::Index i = 0; i < rep.shape.values.size(); ++i)
    os << ',' << formatReal(rep.shape.values[i]);
  for (int i = 0; i < 3; ++i) os << ',' << formatReal(rep.color_rgb[i]);
  for (int i = 0; i < 3; ++i) os << ',' << formatReal(rep.color_yuv[i]);
  for (int i = 0; i < 3; ++i) os << ',' << formatReal(rep.color_hsv[i]);
  os << ',' << csvField(rep.label) << ',' << csvField(rep.view_id) << '\n';
}

inline nlohmann::json representationToJson(const ObjectRepresentation& rep) {
  nlohmann::json j;
  j["bins"] = rep.shape.bins_per_side;
  j["plane_order"] = {planeName(rep.shape.plane_order[0]),
                      planeName(rep.shape.plane_order[1]),
                      planeName(rep.shape.plane_order[2])};
  j["shape"] = std::vector<double>(rep.shape.values.data(),
                                   rep.shape.values.data() + rep.shape.values.size());
  j["color_rgb"] = {rep.color_rgb[0], rep.color_rgb[1], rep.color_rgb[2]};
  j["color_yuv"] = {rep.color_yuv[0], rep.color_yuv[1], rep.color_yuv[2]};
  j["color_hsv"] = {rep.color_hsv[0], rep.color_hsv[1], rep.color_hsv[2]};
  j["label"] = rep.label;
  j["view_id"] = rep.view_id;
  return j;
}

inline ObjectRepresentation representationFromJson(const nlohmann::json& j) {
  ObjectRepresentation rep;
  rep.shape.bins_per_side = j.at("bins").get<int>();
  const auto& order = j.at("plane_order");
  for (int i = 0; i < 3; ++i)
    rep.shape.plane_order[i] = parsePlane(order.at(i).get<std::string>());
  const auto values = j.at("shape").get<std::vector<double>>();
  rep.shape.values =
      Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
  auto readColor = [&](const char* key, Color3<double>& vec) {
    const auto& a = j.at(key);
    for (int i = 0; i < 3; ++i) vec[i] = a.at(i).get<double>();
  };
  readColor("color_rgb", rep.color_rgb);
  readColor("color_yuv", rep.color_yuv);
  readColor("color_hsv", rep.color_hsv);
  rep.label = j.value("label", "");
  rep.view_id = j.value("view_id", "");
  return rep;
}

// --- metric and memory ----------------------------------------------------

inline nlohmann::json metricSpecToJson(const MetricSpec& spec) {
  return {{"base", measureName(spec.base)},
          {"color_space", colorSpaceName(spec.color_space)},
          {"color_weight", spec.color_weight}};
}

inline MetricSpec metricSpecFromJson(const nlohmann::json& j) {
  MetricSpec spec;
  spec.base = parseMeasure(j.at("base").get<std::string>());
  spec.color_space = parseColorSpace(j.at("color_space").get<std::string>());
  spec.color_weight = j.at("color_weight").get<double>();
  return spec;
}

inline nlohmann::json memoryToJson(const Memory& memory) {
  nlohmann::json cats = nlohmann::json::array();
  for (const auto& cat : memory.categories()) {
    nlohmann::json instances = nlohmann::json::array();
    for (const auto& rep : cat.instances) instances.push_back(representationToJson(rep));
    cats.push_back({{"name", cat.name}, {"instances", std::move(instances)}});
  }
  return {{"metric", metricSpecToJson(memory.metric())},
          {"categories", std::move(cats)}};
}

inline Memory memoryFromJson(const nlohmann::json& j) {
  Memory memory(metricSpecFromJson(j.at("metric")));
  for (const auto& cat : j.at("categories")) {
    std::vector<ObjectRepresentation> instances;
    for (const auto& inst : cat.at("instances"))
      instances.push_back(representationFromJson(inst));
    memory.teach(cat.at("name").get<std::string>(), instances);
  }
  return memory;
}

// --- experiment traces and report tables -----------------------------------

inline nlohmann::json traceEventToJson(const TraceEvent& e) {
  nlohmann::json j;
  j["iteration"] = e.iteration;
  j["kind"] = eventKindName(e.kind);
  j["category"] = e.category;
  if (!e.view_id.empty()) j["view_id"] = e.view_id;
  if (e.kind == EventKind::Ask) {
    j["predicted"] = e.predicted;
    j["correct"] = e.correct;
    j["accuracy"] = e.accuracy;
  }
  return j;
}

inline nlohmann::json experimentToJson(const ExperimentReport& report,
                                       const MetricSpec& metric,
                                       const ProtocolConfig& cfg, int bins_per_side) {
  nlohmann::json events = nlohmann::json::array();
  for (const auto& e : report.trace) events.push_back(traceEventToJson(e));
  return {{"tool_version", std::string(kToolVersion)},
          {"bins", bins_per_side},
          {"metric", metricSpecToJson(metric)},
          {"config",
           {{"tau", cfg.tau},
            {"window_factor", cfg.window_factor},
            {"breakpoint_limit", cfg.breakpoint_limit},
            {"teach_views", cfg.teach_views},
            {"seed", cfg.seed}}},
          {"report",
           {{"qci", report.qci},
            {"nlc", report.nlc},
            {"aic", report.aic},
            {"gca", report.gca},
            {"apa", report.apa},
            {"stop_reason", std::string(stopReasonName(report.stop_reason))}}},
          {"events", std::move(events)}};
}

inline void writeOpenEndedCsvHeader(std::ostream& os) {
  os << "w,seed,qci,nlc,aic,gca,apa,stop_reason\n";
}

inline void writeOpenEndedCsvRow(std::ostream& os, double w, std::uint64_t seed,
                                 const ExperimentReport& report) {
  os << formatReal(w) << ',' << seed << ',' << report.qci << ',' << report.nlc << ','
     << formatReal(report.aic) << ',' << formatReal(report.gca) << ','
     << formatReal(report.apa) << ',' << stopReasonName(report.stop_reason) << '\n';
}

inline double meanOf(const std::vector<double>& xs) {
  if (xs.empty()) return 0.0;
  double sum = 0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

inline double sampleStdOf(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double mean = meanOf(xs);
  double ss = 0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

inline void writeOpenEndedSummaryHeader(std::ostream& os) {
  os << "w,runs,qci_mean,qci_std,nlc_mean,nlc_std,aic_mean,aic_std,"
        "gca_mean,gca_std,apa_mean,apa_std\n";
}

// One summary row per color weight: mean and sample standard deviation of
// each metric over the seeds, mirroring the mean-plus-minus-std presentation
// of the report tables.
inline void writeOpenEndedSummaryRow(std::ostream& os, double w,
                                     const std::vector<ExperimentReport>& runs) {
  std::vector<double> qci, nlc, aic, gca, apa;
  for (const auto& r : runs) {
    qci.push_back(r.qci);
    nlc.push_back(r.nlc);
    aic.push_back(r.aic);
    gca.push_back(r.gca);
    apa.push_back(r.apa);
  }
  os << formatReal(w) << ',' << runs.size();
  for (const auto* xs : {&qci, &nlc, &aic, &gca, &apa})
    os << ',' << formatReal(meanOf(*xs)) << ',' << formatReal(sampleStdOf(*xs));
  os << '\n';
}

inline void writeOfflineCsvHeader(std::ostream& os) {
  os << "descriptor,bins,distance,accuracy,time_s\n";
}

inline void writeOfflineCsvRow(std::ostream& os, int bins_per_side, Measure measure,
                               const FoldReport& report) {
  os << "ortho," << bins_per_side << ',' << measureName(measure) << ','
     << formatReal(report.mean_accuracy) << ',' << formatReal(report.time_seconds)
     << '\n';
}

}  // namespace ortho
