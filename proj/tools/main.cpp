// cadet: generate synthetic KITTI-style datasets and derived products.
//
// Exit codes: 0 success, 1 domain or validation error, 2 I/O error.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <string>

#include "cadet/bev.hpp"
#include "cadet/errors.hpp"
#include "cadet/pipeline.hpp"
#include "cadet/stats.hpp"

namespace fs = std::filesystem;

namespace {

double parse_mixture_value(const std::string& token, const std::string& key) {
  try {
    std::size_t used = 0;
    const double v = std::stod(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    throw cadet::Error("mixture value for '" + key + "' is not a number: " +
                       token);
  }
}

// "car=1.4,ped=0.5" plus optional fixed counts "fence=1,wall=2".
void apply_mixture(const std::string& text, cadet::ClassMixture& mixture) {
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string entry = text.substr(pos, comma - pos);
    pos = comma + 1;
    if (entry.empty()) continue;
    const std::size_t eq = entry.find('=');
    if (eq == std::string::npos) {
      throw cadet::Error("mixture entries need key=value, got: " + entry);
    }
    const std::string key = entry.substr(0, eq);
    const std::string value = entry.substr(eq + 1);
    if (key == "car") {
      mixture.cars_per_scene = parse_mixture_value(value, key);
    } else if (key == "ped") {
      mixture.pedestrians_per_scene = parse_mixture_value(value, key);
    } else if (key == "fence") {
      mixture.fences = static_cast<int>(parse_mixture_value(value, key));
    } else if (key == "wall") {
      mixture.walls = static_cast<int>(parse_mixture_value(value, key));
    } else {
      throw cadet::Error("unknown mixture key '" + key +
                         "' (expected car, ped, fence, wall)");
    }
  }
}

cadet::BevConfig resolve_bev_config(const std::string& spec) {
  if (fs::exists(spec) && fs::is_regular_file(spec)) {
    return cadet::parse_bev_config(cadet::read_text_file(spec));
  }
  try {
    return cadet::bev_preset(spec);
  } catch (const cadet::UnknownPreset&) {
    throw cadet::Error(
        "--config expects a preset (default, max3_density3, max_min_density) "
        "or a config file path; got: " +
        spec);
  }
}

void parse_range(const std::string& text, int& begin, int& end) {
  const std::size_t dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      begin = end = std::stoi(text);
    } else {
      begin = std::stoi(text.substr(0, dots));
      end = std::stoi(text.substr(dots + 2));
    }
  } catch (const std::exception&) {
    throw cadet::Error("--range expects A..B with integer bounds, got: " +
                       text);
  }
  if (begin < 0 || end < begin) {
    throw cadet::Error("--range bounds out of order: " + text);
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Synthetic KITTI-style dataset tool"};
  app.require_subcommand(1);

  int samples = 1;
  int reset_interval = 25;
  std::uint64_t seed = 0;
  std::string out_dir = "dataset";
  std::string mixture;
  auto* generate = app.add_subcommand("generate", "Generate a dataset");
  // Range checks live in GenerateOptions::validate, whose messages talk about
  // the option domain instead of floating point limits.
  generate->add_option("--samples", samples, "Number of samples");
  generate->add_option("--reset-interval", reset_interval,
                       "Samples per scene before a fresh scene is drawn");
  generate->add_option("--seed", seed, "Master seed");
  generate->add_option("--out", out_dir, "Output dataset directory");
  generate->add_option("--mixture", mixture,
                       "Class mixture, e.g. car=1.4,ped=0.5");

  std::string config_spec = "default";
  std::string dataset_dir;
  std::string range;
  bool png_layers = false;
  auto* rasterize = app.add_subcommand(
      "rasterize", "Rasterize scans into bird's eye view stacks");
  rasterize->add_option("--config", config_spec,
                        "Preset name or config file path");
  rasterize->add_option("--dataset", dataset_dir, "Dataset directory")
      ->required();
  rasterize->add_option("--range", range, "Sample range A..B (default: all)");
  rasterize->add_flag("--png", png_layers, "Also write per-layer PNGs");

  std::string project_dataset;
  int project_index = 0;
  std::string project_out;
  bool vertices = false;
  auto* project = app.add_subcommand(
      "project", "Overlay the scan (or box vertices) on a sample image");
  project->add_option("--dataset", project_dataset, "Dataset directory")
      ->required();
  project->add_option("--index", project_index, "Sample index")->required();
  project->add_option("--out", project_out, "Output PNG path")->required();
  project->add_flag("--vertices", vertices,
                    "Draw box vertices colored by occlusion instead of points");

  std::string stats_dataset;
  std::string stats_out;
  auto* stats = app.add_subcommand("stats", "Summarize dataset label statistics");
  stats->add_option("--dataset", stats_dataset, "Dataset directory")
      ->required();
  stats->add_option("--out", stats_out, "Output CSV path")->required();

  std::string validate_dataset_dir;
  auto* validate = app.add_subcommand("validate", "Check dataset integrity");
  validate->add_option("--dataset", validate_dataset_dir, "Dataset directory")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  if (generate->parsed()) {
    cadet::GenerateOptions opts;
    opts.samples = samples;
    opts.reset_interval = reset_interval;
    opts.seed = seed;
    if (!mixture.empty()) apply_mixture(mixture, opts.scene.mixture);
    const cadet::GenerateReport report =
        cadet::generate_dataset(opts, out_dir);
    std::printf("generated %d samples, %ld labeled objects (%ld car, %ld ped)\n",
                report.samples, report.labeled_objects,
                report.class_counts.count("Car")
                    ? report.class_counts.at("Car")
                    : 0,
                report.class_counts.count("Pedestrian")
                    ? report.class_counts.at("Pedestrian")
                    : 0);
    std::printf("visibility heuristic vs oracle: %ld/%ld disagreements (%.2f%%)\n",
                report.oracle_disagreements, report.oracle_comparisons,
                100.0 * report.disagreement_rate());
    return 0;
  }

  if (rasterize->parsed()) {
    const cadet::BevConfig cfg = resolve_bev_config(config_spec);
    int begin = -1, end = -1;
    if (!range.empty()) parse_range(range, begin, end);
    const cadet::RasterizeReport report = cadet::rasterize_dataset(
        cadet::DatasetLayout{dataset_dir}, cfg, begin, end, png_layers);
    std::printf("rasterized %d samples in %.2f s (%.1f samples/s)\n",
                report.samples, report.seconds, report.samples_per_second);
    return 0;
  }

  if (project->parsed()) {
    const cadet::DatasetLayout layout{project_dataset};
    const cadet::Sample sample = cadet::load_sample(layout, project_index);
    const cadet::Image overlay =
        vertices ? cadet::vertex_overlay(sample) : cadet::project_overlay(sample);
    cadet::write_png(project_out, overlay);
    std::printf("wrote %s\n", project_out.c_str());
    return 0;
  }

  if (stats->parsed()) {
    const cadet::DatasetStats s =
        cadet::dataset_stats(cadet::DatasetLayout{stats_dataset});
    cadet::write_text_file(stats_out, cadet::stats_to_csv(s));
    std::printf("%ld samples, %ld objects, %.3f objects/image -> %s\n",
                s.samples, s.total_objects, s.mean_objects_per_image(),
                stats_out.c_str());
    return 0;
  }

  if (validate->parsed()) {
    const cadet::ValidationReport report =
        cadet::validate_dataset(cadet::DatasetLayout{validate_dataset_dir});
    for (const cadet::Violation& v : report.violations) {
      std::printf("%s: %s\n", v.path.string().c_str(), v.message.c_str());
    }
    if (!report.ok()) {
      std::printf("%zu violations\n", report.violations.size());
      return 1;
    }
    std::printf("ok\n");
    return 0;
  }

  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const cadet::IoError& e) {
    std::fprintf(stderr, "cadet: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "cadet: %s\n", e.what());
    return 1;
  }
}
