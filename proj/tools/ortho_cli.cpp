// Command-line front end: describe point clouds, run the offline k-fold and
// open-ended evaluations, and generate synthetic datasets.
//
// Exit codes: 0 success, 2 parse/usage errors, 3 degenerate cloud,
// 4 empty dataset, 5 invalid configuration.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ortho/dataset.hpp"
#include "ortho/errors.hpp"
#include "ortho/metric.hpp"
#include "ortho/pcd_io.hpp"
#include "ortho/protocol.hpp"
#include "ortho/serialization.hpp"
#include "ortho/synthetic.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitEmptyDataset = 4;
constexpr int kExitInvalidSpec = 5;

// List arguments accept single values, comma lists, and lo..hi:step ranges
// (step defaults to 1), e.g. "15", "5,10,15", "5..50:5", "0..9".
std::vector<long long> parseIntList(const std::string& text) {
  std::vector<long long> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (part.empty()) throw ortho::InvalidSpec("empty list element in " + text);
    const auto dots = part.find("..");
    if (dots == std::string::npos) {
      out.push_back(std::stoll(part));
      continue;
    }
    const auto colon = part.find(':', dots + 2);
    const long long lo = std::stoll(part.substr(0, dots));
    const long long hi = std::stoll(
        part.substr(dots + 2, colon == std::string::npos ? std::string::npos
                                                         : colon - dots - 2));
    const long long step =
        colon == std::string::npos ? 1 : std::stoll(part.substr(colon + 1));
    if (step < 1) throw ortho::InvalidSpec("range step must be >= 1 in " + part);
    if (hi < lo) throw ortho::InvalidSpec("descending range in " + part);
    for (long long v = lo; v <= hi; v += step) out.push_back(v);
  }
  if (out.empty()) throw ortho::InvalidSpec("empty list: " + text);
  return out;
}

std::vector<double> parseRealList(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (part.empty()) throw ortho::InvalidSpec("empty list element in " + text);
    out.push_back(std::stod(part));
  }
  if (out.empty()) throw ortho::InvalidSpec("empty list: " + text);
  return out;
}

fs::path resolveDatasetRoot(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("ORTHO_DATASET_ROOT")) return env;
  throw ortho::EmptyDataset(
      "no dataset given: pass --dataset or set ORTHO_DATASET_ROOT");
}

std::ostream& openOutput(const std::string& path, std::ofstream& file) {
  if (path.empty()) return std::cout;
  file.open(path, std::ios::binary);
  if (!file) throw ortho::UnreadableFile("cannot open output file " + path);
  return file;
}

int cmdDescribe(const std::vector<std::string>& inputs, int bins,
                const std::string& format, const std::string& output) {
  std::ofstream file;
  std::ostream& os = openOutput(output, file);

  bool any_parse_error = false;
  bool any_degenerate = false;
  std::vector<ortho::ObjectRepresentation> reps;
  for (const auto& input : inputs) {
    try {
      ortho::PointCloud cloud = ortho::parsePcdFile(input);
      reps.push_back(ortho::describe(cloud, bins));
    } catch (const ortho::DegenerateCloud& e) {
      std::cerr << "ortho: " << input << ": degenerate cloud: " << e.what() << "\n";
      any_degenerate = true;
    } catch (const ortho::Error& e) {
      std::cerr << "ortho: " << input << ": " << e.what() << "\n";
      any_parse_error = true;
    }
  }

  if (format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& rep : reps) arr.push_back(ortho::representationToJson(rep));
    os << arr.dump(2) << "\n";
  } else {
    std::ostringstream invocation;
    invocation << "describe --bins " << bins << " --format csv";
    ortho::writeSchemaComment(os, invocation.str());
    ortho::writeRepresentationCsvHeader(os, bins);
    for (const auto& rep : reps) ortho::writeRepresentationCsvRow(os, rep);
  }

  if (any_parse_error) return kExitUsage;
  if (any_degenerate) return kExitDegenerate;
  return 0;
}

int cmdEvalOffline(const std::string& dataset_flag, const std::string& bins_list,
                   const std::string& distance_flag, int k, std::uint64_t seed,
                   const std::string& output) {
  const fs::path root = resolveDatasetRoot(dataset_flag);
  const ortho::DatasetIndex index = ortho::indexDataset(root);
  if (index.warnings > 0)
    std::cerr << "ortho: skipped " << index.warnings << " unreadable view file(s)\n";
  const auto clouds = ortho::loadClouds(index);

  const std::vector<long long> bins_values = parseIntList(bins_list);
  for (long long b : bins_values)
    if (b < 1) throw ortho::InvalidSpec("bins must be >= 1");

  std::vector<ortho::Measure> measures;
  if (distance_flag == "all")
    measures.assign(ortho::kAllMeasures.begin(), ortho::kAllMeasures.end());
  else
    measures.push_back(ortho::parseMeasure(distance_flag));

  std::ofstream file;
  std::ostream& os = openOutput(output, file);
  std::ostringstream invocation;
  invocation << "eval-offline --dataset " << root.string() << " --bins " << bins_list
             << " --distance " << distance_flag << " --k " << k << " --seed " << seed;
  ortho::writeSchemaComment(os, invocation.str());
  ortho::writeOfflineCsvHeader(os);

  for (long long b : bins_values) {
    const auto described = ortho::describeClouds(clouds, static_cast<int>(b));
    for (ortho::Measure m : measures) {
      ortho::MetricSpec metric;
      metric.base = m;
      const ortho::FoldReport report = ortho::runKFold(described, metric, k, seed);
      ortho::writeOfflineCsvRow(os, static_cast<int>(b), m, report);
    }
  }
  return 0;
}

int cmdEvalOpenEnded(const std::string& dataset_flag, int bins,
                     const std::string& distance_flag, const std::string& space_flag,
                     const std::string& weights_list, double tau, int window_factor,
                     int breakpoint_limit, int teach_views,
                     const std::string& seeds_list, const std::string& output_dir) {
  const fs::path root = resolveDatasetRoot(dataset_flag);
  const ortho::DatasetIndex index = ortho::indexDataset(root);
  if (index.warnings > 0)
    std::cerr << "ortho: skipped " << index.warnings << " unreadable view file(s)\n";
  const auto dataset = ortho::describeDataset(index, bins);

  const ortho::ColorSpace space = ortho::parseColorSpace(space_flag);
  std::vector<double> weights = parseRealList(weights_list);
  for (double& w : weights) {
    if (w < 0.0 || w > 1.0)
      throw ortho::InvalidSpec("color weight must be in [0,1]");
    if (space == ortho::ColorSpace::None && w != 0.0) {
      std::cerr << "ortho: color space none forces color weight 0\n";
      w = 0.0;
    }
  }
  const std::vector<long long> seeds = parseIntList(seeds_list);
  for (long long s : seeds)
    if (s < 0) throw ortho::InvalidSpec("seeds must be non-negative");

  fs::create_directories(output_dir);
  std::ofstream rows(fs::path(output_dir) / "rows.csv", std::ios::binary);
  std::ofstream summary(fs::path(output_dir) / "summary.csv", std::ios::binary);
  if (!rows || !summary)
    throw ortho::UnreadableFile("cannot write into " + output_dir);

  std::ostringstream invocation;
  invocation << "eval-open-ended --dataset " << root.string() << " --bins " << bins
             << " --distance " << distance_flag << " --color-space " << space_flag
             << " --color-weight " << weights_list << " --tau "
             << ortho::formatReal(tau) << " --window-factor " << window_factor
             << " --breakpoint " << breakpoint_limit << " --teach-views "
             << teach_views << " --seeds " << seeds_list;
  ortho::writeSchemaComment(rows, invocation.str());
  ortho::writeOpenEndedCsvHeader(rows);
  ortho::writeSchemaComment(summary, invocation.str());
  ortho::writeOpenEndedSummaryHeader(summary);

  for (double w : weights) {
    ortho::MetricSpec metric;
    metric.base = ortho::parseMeasure(distance_flag);
    metric.color_space = space;
    metric.color_weight = w;

    std::vector<ortho::ExperimentReport> runs;
    for (long long s : seeds) {
      ortho::ProtocolConfig cfg;
      cfg.tau = tau;
      cfg.window_factor = window_factor;
      cfg.breakpoint_limit = breakpoint_limit;
      cfg.teach_views = teach_views;
      cfg.seed = static_cast<std::uint64_t>(s);

      ortho::ExperimentReport report = ortho::runOpenEnded(dataset, metric, cfg);
      ortho::writeOpenEndedCsvRow(rows, w, cfg.seed, report);

      const std::string trace_name =
          "trace_w" + ortho::formatReal(w) + "_seed" + std::to_string(s) + ".json";
      std::ofstream trace(fs::path(output_dir) / trace_name, std::ios::binary);
      trace << ortho::experimentToJson(report, metric, cfg, bins).dump(2) << "\n";
      runs.push_back(std::move(report));
    }
    ortho::writeOpenEndedSummaryRow(summary, w, runs);
  }
  return 0;
}

int cmdGenSynthetic(const std::string& spec_path, const std::string& out_dir) {
  std::ifstream in(spec_path);
  if (!in) throw ortho::UnreadableFile("cannot read spec file " + spec_path);
  const std::vector<ortho::CategorySpec> specs = ortho::parseDatasetSpec(in);

  std::size_t total_views = 0;
  for (const auto& spec : specs) {
    const fs::path dir = fs::path(out_dir) / spec.name;
    fs::create_directories(dir);
    for (const auto& cloud : ortho::generateCategoryViews(spec)) {
      ortho::writePcdFile(dir / (cloud.view_id + ".pcd"), cloud);
      ++total_views;
    }
  }
  std::cout << specs.size() << " categories, " << total_views << " views written to "
            << out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"orthographic projection descriptors and open-ended recognition"};
  app.set_version_flag("--version", std::string(ortho::kToolVersion));
  app.require_subcommand(1);

  // describe
  auto* describe = app.add_subcommand("describe", "describe point cloud files");
  std::vector<std::string> inputs;
  int bins = 15;
  std::string format = "csv", output;
  describe->add_option("inputs", inputs, "pcd files")->required()->expected(-1);
  describe->add_option("--bins", bins, "histogram side length n")
      ->check(CLI::PositiveNumber);
  describe->add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  describe->add_option("--output", output, "output file (default stdout)");

  // eval-offline
  auto* offline = app.add_subcommand("eval-offline", "k-fold cross-validation");
  std::string off_dataset, off_bins = "15", off_distance = "manhattan", off_output;
  int off_k = 10;
  std::uint64_t off_seed = 0;
  offline->add_option("--dataset", off_dataset,
                      "dataset root (default $ORTHO_DATASET_ROOT)");
  offline->add_option("--bins", off_bins, "bins list, e.g. 15 or 5,10 or 5..50:5");
  offline->add_option("--distance", off_distance, "measure name or 'all'");
  offline->add_option("--k", off_k, "fold count")->check(CLI::Range(2, 1000));
  offline->add_option("--seed", off_seed, "shuffle seed");
  offline->add_option("--output", off_output, "output csv (default stdout)");

  // eval-open-ended
  auto* open = app.add_subcommand("eval-open-ended", "simulated-teacher protocol");
  std::string oe_dataset, oe_distance = "manhattan", oe_space = "none";
  std::string oe_weights = "0", oe_seeds = "0", oe_output = "open_ended_report";
  int oe_bins = 15, oe_wf = 3, oe_bp = 100, oe_teach = 3;
  double oe_tau = 0.8;
  open->add_option("--dataset", oe_dataset,
                   "dataset root (default $ORTHO_DATASET_ROOT)");
  open->add_option("--bins", oe_bins, "histogram side length n")
      ->check(CLI::PositiveNumber);
  open->add_option("--distance", oe_distance, "base measure name");
  open->add_option("--color-space", oe_space, "none, rgb, yuv or hsv");
  open->add_option("--color-weight", oe_weights, "w list, e.g. 0 or 0.0,0.5,1.0");
  open->add_option("--tau", oe_tau, "accuracy threshold in (0,1]");
  open->add_option("--window-factor", oe_wf, "window size per known category")
      ->check(CLI::PositiveNumber);
  open->add_option("--breakpoint", oe_bp, "asks without introduction before stopping")
      ->check(CLI::PositiveNumber);
  open->add_option("--teach-views", oe_teach, "views taught per introduction")
      ->check(CLI::PositiveNumber);
  open->add_option("--seeds", oe_seeds, "seed list, e.g. 0 or 0..9");
  open->add_option("--output", oe_output, "report directory");

  // gen-synthetic
  auto* gen = app.add_subcommand("gen-synthetic", "generate a synthetic dataset");
  std::string gen_spec, gen_out;
  gen->add_option("--spec", gen_spec, "category spec file")->required();
  gen->add_option("--out", gen_out, "dataset output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "ortho: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (app.got_subcommand(describe))
      return cmdDescribe(inputs, bins, format, output);
    if (app.got_subcommand(offline))
      return cmdEvalOffline(off_dataset, off_bins, off_distance, off_k, off_seed,
                            off_output);
    if (app.got_subcommand(open))
      return cmdEvalOpenEnded(oe_dataset, oe_bins, oe_distance, oe_space, oe_weights,
                              oe_tau, oe_wf, oe_bp, oe_teach, oe_seeds, oe_output);
    if (app.got_subcommand(gen)) return cmdGenSynthetic(gen_spec, gen_out);
  } catch (const ortho::DegenerateCloud& e) {
    std::cerr << "ortho: degenerate cloud: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const ortho::EmptyDataset& e) {
    std::cerr << "ortho: empty dataset: " << e.what() << "\n";
    return kExitEmptyDataset;
  } catch (const ortho::InvalidSpec& e) {
    std::cerr << "ortho: invalid configuration: " << e.what() << "\n";
    return kExitInvalidSpec;
  } catch (const ortho::InvalidDims& e) {
    std::cerr << "ortho: invalid configuration: " << e.what() << "\n";
    return kExitInvalidSpec;
  } catch (const ortho::TooFewViews& e) {
    std::cerr << "ortho: invalid configuration: " << e.what() << "\n";
    return kExitInvalidSpec;
  } catch (const std::invalid_argument& e) {
    std::cerr << "ortho: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "ortho: " << e.what() << "\n";
    return kExitUsage;
  }
  return 0;
}
