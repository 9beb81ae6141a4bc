#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "cadet/kitti_io.hpp"

namespace cadet {

inline constexpr int kOrientationBins = 36;

/// Per-class aggregates over a label set. The orientation histogram bins
/// rotation_y uniformly over [-pi, pi); bbox numbers are in pixels.
struct ClassStats {
  long count = 0;
  std::array<long, kOrientationBins> orientation_hist{};
  double width_min = 0, width_max = 0, width_mean = 0, width_stddev = 0;
  double height_min = 0, height_max = 0, height_mean = 0, height_stddev = 0;
};

struct DatasetStats {
  long samples = 0;
  long total_objects = 0;  // DontCare rows excluded
  std::map<std::string, ClassStats> per_class;
  std::vector<long> objects_per_image_hist;  // index = labeled objects in image

  double mean_objects_per_image() const {
    return samples == 0 ? 0.0 : static_cast<double>(total_objects) / samples;
  }
};

/// Aggregate one label list per sample. DontCare rows are ignored.
DatasetStats compute_stats(const std::vector<std::vector<ObjectLabel>>& samples);

/// Tidy CSV: columns metric,class,bin,value; bin is empty for scalars.
/// Histogram bin edges are documented in '#' header comments.
std::string stats_to_csv(const DatasetStats& stats);

}  // namespace cadet
