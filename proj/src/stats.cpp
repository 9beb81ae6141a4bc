#include "cadet/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

namespace cadet {
namespace {

struct Accumulator {
  long n = 0;
  double min = std::numeric_limits<double>::infinity();
  double max = -std::numeric_limits<double>::infinity();
  double sum = 0;
  double sum_sq = 0;

  void add(double v) {
    ++n;
    min = std::min(min, v);
    max = std::max(max, v);
    sum += v;
    sum_sq += v * v;
  }
  double mean() const { return n == 0 ? 0.0 : sum / n; }
  double stddev() const {
    if (n == 0) return 0.0;
    const double m = mean();
    return std::sqrt(std::max(0.0, sum_sq / n - m * m));
  }
};

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

DatasetStats compute_stats(
    const std::vector<std::vector<ObjectLabel>>& samples) {
  DatasetStats stats;
  stats.samples = static_cast<long>(samples.size());

  std::map<std::string, Accumulator> widths, heights;
  for (const auto& labels : samples) {
    long in_image = 0;
    for (const ObjectLabel& label : labels) {
      if (label.is_dont_care()) continue;
      ++in_image;
      ++stats.total_objects;
      ClassStats& cls = stats.per_class[label.class_name];
      ++cls.count;
      const double wrapped = wrap_to_pi(label.rotation_y);
      const double bin_width = 2.0 * std::numbers::pi / kOrientationBins;
      const int bin = std::min(kOrientationBins - 1,
                               static_cast<int>(std::floor(
                                   (wrapped + std::numbers::pi) / bin_width)));
      ++cls.orientation_hist[bin];
      widths[label.class_name].add(label.right - label.left);
      heights[label.class_name].add(label.bottom - label.top);
    }
    if (stats.objects_per_image_hist.size() <=
        static_cast<std::size_t>(in_image)) {
      stats.objects_per_image_hist.resize(in_image + 1, 0);
    }
    ++stats.objects_per_image_hist[in_image];
  }
  for (auto& [name, cls] : stats.per_class) {
    const Accumulator& w = widths[name];
    const Accumulator& h = heights[name];
    cls.width_min = w.min;
    cls.width_max = w.max;
    cls.width_mean = w.mean();
    cls.width_stddev = w.stddev();
    cls.height_min = h.min;
    cls.height_max = h.max;
    cls.height_mean = h.mean();
    cls.height_stddev = h.stddev();
  }
  return stats;
}

std::string stats_to_csv(const DatasetStats& stats) {
  std::string out;
  out +=
      "# orientation histogram: rotation_y in 36 uniform bins over [-pi, pi); "
      "bin k spans [-pi + k*pi/18, -pi + (k+1)*pi/18)\n";
  out +=
      "# objects_per_image histogram: bin k counts images with exactly k "
      "labeled objects (DontCare excluded)\n";
  out += "# bbox metrics are 2D box sizes in pixels\n";
  out += "metric,class,bin,value\n";
  out += "samples,,," + std::to_string(stats.samples) + "\n";
  out += "total_objects,,," + std::to_string(stats.total_objects) + "\n";
  out += "mean_objects_per_image,,," +
         format_value(stats.mean_objects_per_image()) + "\n";
  for (const auto& [name, cls] : stats.per_class) {
    out += "count," + name + ",," + std::to_string(cls.count) + "\n";
  }
  for (const auto& [name, cls] : stats.per_class) {
    for (int k = 0; k < kOrientationBins; ++k) {
      out += "orientation," + name + ',' + std::to_string(k) + ',' +
             std::to_string(cls.orientation_hist[k]) + "\n";
    }
  }
  for (const auto& [name, cls] : stats.per_class) {
    out += "bbox_width_min," + name + ",," + format_value(cls.width_min) + "\n";
    out += "bbox_width_mean," + name + ",," + format_value(cls.width_mean) + "\n";
    out += "bbox_width_max," + name + ",," + format_value(cls.width_max) + "\n";
    out += "bbox_width_stddev," + name + ",," + format_value(cls.width_stddev) +
           "\n";
    out += "bbox_height_min," + name + ",," + format_value(cls.height_min) + "\n";
    out +=
        "bbox_height_mean," + name + ",," + format_value(cls.height_mean) + "\n";
    out += "bbox_height_max," + name + ",," + format_value(cls.height_max) + "\n";
    out += "bbox_height_stddev," + name + ",," +
           format_value(cls.height_stddev) + "\n";
  }
  for (std::size_t k = 0; k < stats.objects_per_image_hist.size(); ++k) {
    out += "objects_per_image,," + std::to_string(k) + ',' +
           std::to_string(stats.objects_per_image_hist[k]) + "\n";
  }
  return out;
}

}  // namespace cadet
