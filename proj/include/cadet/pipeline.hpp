#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "cadet/bev.hpp"
#include "cadet/image.hpp"
#include "cadet/kitti_io.hpp"
#include "cadet/occlusion.hpp"
#include "cadet/scene_synth.hpp"
#include "cadet/stats.hpp"

namespace cadet {

/// KITTI-style directory layout rooted at one dataset directory.
struct DatasetLayout {
  std::filesystem::path root;

  std::filesystem::path label_dir() const { return root / "label_2"; }
  std::filesystem::path calib_dir() const { return root / "calib"; }
  std::filesystem::path velodyne_dir() const { return root / "velodyne"; }
  std::filesystem::path plane_dir() const { return root / "planes"; }
  std::filesystem::path image_dir() const { return root / "image_2"; }
  std::filesystem::path scene_dir() const { return root / "scenes"; }
  std::filesystem::path bev_dir() const { return root / "bev"; }

  std::filesystem::path label_path(int i) const {
    return label_dir() / (sample_name(i) + ".txt");
  }
  std::filesystem::path calib_path(int i) const {
    return calib_dir() / (sample_name(i) + ".txt");
  }
  std::filesystem::path velodyne_path(int i) const {
    return velodyne_dir() / (sample_name(i) + ".bin");
  }
  std::filesystem::path plane_path(int i) const {
    return plane_dir() / (sample_name(i) + ".txt");
  }
  std::filesystem::path image_path(int i) const {
    return image_dir() / (sample_name(i) + ".png");
  }
  std::filesystem::path scene_path(int i) const {
    return scene_dir() / (sample_name(i) + ".txt");
  }
  std::filesystem::path manifest_path() const { return root / "manifest.txt"; }
  std::filesystem::path train_split_path() const { return root / "train.txt"; }
  std::filesystem::path val_split_path() const { return root / "val.txt"; }
};

struct GenerateOptions {
  int samples = 1;
  int reset_interval = 25;
  std::uint64_t seed = 0;
  SceneParams scene;
  LidarRig rig;
  CameraModel camera = CameraModel::pinhole(700.0, 700.0, 621.0, 187.5,
                                            1242, 375);
  LabelOptions labels;
  double max_step = 0.5;  // per-sample random-walk bound, meters
  bool write_scenes = true;

  void validate() const;
};

struct GenerateReport {
  int samples = 0;
  long labeled_objects = 0;
  std::map<std::string, long> class_counts;
  long oracle_comparisons = 0;   // label candidates scored against the oracle
  long oracle_disagreements = 0; // depth-test verdict != exact-ray verdict

  double disagreement_rate() const {
    return oracle_comparisons == 0
               ? 0.0
               : static_cast<double>(oracle_disagreements) / oracle_comparisons;
  }
};

/// Generate a dataset: every reset_interval samples a fresh scene is drawn
/// from a seed derived per interval; within an interval objects take a
/// bounded random walk. Emits label_2/, calib/, velodyne/, planes/, image_2/
/// (plus scenes/ unless disabled), manifest.txt, and train/val split lists
/// (alternating intervals). Deterministic for a given seed.
GenerateReport generate_dataset(const GenerateOptions& opts,
                                const std::filesystem::path& out_dir);

/// One loaded sample. depth is re-rendered from the scenes/ sidecar when
/// present (it is not stored on disk) and left empty otherwise.
struct Sample {
  int index = 0;
  VelodyneScan scan;
  Image image;
  DepthMap depth;
  std::vector<ObjectLabel> labels;
  CalibrationSet calib;
  GroundPlane plane;
  bool has_scene = false;
  SceneDescription scene;
};

/// Sorted sample indices, derived from the label directory listing.
std::vector<int> dataset_indices(const DatasetLayout& layout);

/// Load every stored part of one sample; throws MissingSample when a
/// required file is absent.
Sample load_sample(const DatasetLayout& layout, int index);

/// Draw the sample's LIDAR points over its camera image. Points behind the
/// camera or outside the image are dropped; color encodes depth, linear in
/// 1/depth from red (near, <= 2 m) to blue (far, >= 70 m).
Image project_overlay(const Sample& sample);

/// Draw green/red dots at the projected box corners of every label candidate
/// (green = corner passes the depth test, red = flagged occluded). Requires
/// the sample's scene sidecar; throws Error without it.
Image vertex_overlay(const Sample& sample);

struct RasterizeReport {
  int samples = 0;
  double seconds = 0;
  double samples_per_second = 0;
};

/// Rasterize samples [begin, end] (inclusive; pass -1, -1 for all) into
/// bev/<index>.bin/.txt, optionally dumping one grayscale PNG per layer.
/// Throws MissingSample for an explicitly requested missing index and
/// TruncatedFile (with the file path) for corrupt scans.
RasterizeReport rasterize_dataset(const DatasetLayout& layout,
                                  const BevConfig& cfg, int begin, int end,
                                  bool png_layers);

/// Aggregate statistics over every label file in the dataset. Parse errors
/// carry the offending file path.
DatasetStats dataset_stats(const DatasetLayout& layout);

struct Violation {
  std::filesystem::path path;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

/// Check file presence per index, label field ranges, calibration and plane
/// invariants, scan length divisibility, and image signatures. Violations
/// are report content, not exceptions.
ValidationReport validate_dataset(const DatasetLayout& layout);

/// Per-sample labeled-object counts recorded in the manifest.
struct ManifestSample {
  std::string name;
  long labeled = 0;
  long cars = 0;
  long pedestrians = 0;
};

struct ManifestInfo {
  std::uint64_t seed = 0;
  int samples = 0;
  int reset_interval = 0;
  std::map<std::string, std::string> hashes;  // config name -> 16-hex-digit hash
  long labeled_objects = 0;
  long oracle_comparisons = 0;
  long oracle_disagreements = 0;
  std::map<std::string, long> class_counts;
  std::vector<ManifestSample> per_sample;
};

std::string write_manifest(const ManifestInfo& info);
ManifestInfo parse_manifest(const std::string& text);

/// Whole-file helpers used by the CLI and tests; throw IoError with the path.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);
std::vector<std::uint8_t> read_binary_file(const std::filesystem::path& path);
void write_binary_file(const std::filesystem::path& path,
                       const std::vector<std::uint8_t>& bytes);

}  // namespace cadet
