#include "cadet/bev.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "cadet/hash.hpp"
#include "internal_util.hpp"

namespace cadet {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kPosInf = std::numeric_limits<double>::infinity();

bool has_feature(const std::vector<BevFeature>& set, BevFeature f) {
  return std::find(set.begin(), set.end(), f) != set.end();
}

void check_feature_set(const std::vector<BevFeature>& set, const char* what) {
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (std::size_t j = i + 1; j < set.size(); ++j) {
      if (set[i] == set[j]) {
        throw Error(std::string(what) + ": duplicate feature " +
                    feature_name(set[i]));
      }
    }
  }
}

}  // namespace

const char* feature_name(BevFeature feature) {
  switch (feature) {
    case BevFeature::MaxHeight:
      return "max_height";
    case BevFeature::MinHeight:
      return "min_height";
    case BevFeature::Density:
      return "density";
  }
  return "?";
}

BevFeature parse_feature(const std::string& name) {
  if (name == "max_height") return BevFeature::MaxHeight;
  if (name == "min_height") return BevFeature::MinHeight;
  if (name == "density") return BevFeature::Density;
  throw ParseError("unknown feature name: " + name);
}

int BevConfig::rows() const {
  return static_cast<int>(std::ceil((x_range[1] - x_range[0]) / cell_size));
}

int BevConfig::cols() const {
  return static_cast<int>(std::ceil((y_range[1] - y_range[0]) / cell_size));
}

int BevConfig::layer_count() const {
  return num_slices * static_cast<int>(slice_features.size()) +
         static_cast<int>(cloud_features.size());
}

double BevConfig::slice_height() const {
  return (z_range[1] - z_range[0]) / num_slices;
}

void BevConfig::validate() const {
  if (!(cell_size > 0)) throw Error("cell_size must be positive");
  if (!(x_range[1] > x_range[0]) || !(y_range[1] > y_range[0]) ||
      !(z_range[1] > z_range[0])) {
    throw Error("x/y/z ranges must be non-empty");
  }
  if (num_slices < 1) throw Error("num_slices must be at least 1");
  if (density_log_base_count < 2) {
    throw Error("density_log_base_count must be at least 2");
  }
  check_feature_set(slice_features, "slice_features");
  check_feature_set(cloud_features, "cloud_features");
  if (layer_count() < 1) {
    throw EmptyConfig("configuration produces zero layers");
  }
}

BevConfig bev_preset(const std::string& name) {
  BevConfig cfg;
  if (name == "default") {
    cfg.num_slices = 5;
    cfg.slice_features = {BevFeature::MaxHeight};
    cfg.cloud_features = {BevFeature::Density};
  } else if (name == "max3_density3") {
    cfg.num_slices = 3;
    cfg.slice_features = {BevFeature::MaxHeight, BevFeature::Density};
    cfg.cloud_features = {};
  } else if (name == "max_min_density") {
    cfg.num_slices = 1;
    cfg.slice_features = {};
    cfg.cloud_features = {BevFeature::MaxHeight, BevFeature::MinHeight,
                          BevFeature::Density};
  } else {
    throw UnknownPreset("no rasterizer preset named '" + name + "'");
  }
  return cfg;
}

double density_value(std::int64_t n, int log_base_count) {
  if (n < 0) throw Error("point count must be non-negative");
  if (log_base_count < 2) {
    throw Error("density_log_base_count must be at least 2");
  }
  return std::min(1.0, std::log(static_cast<double>(n) + 1.0) /
                           std::log(static_cast<double>(log_base_count)));
}

BevStack rasterize(const PointCloud& cloud, const BevConfig& cfg) {
  cfg.validate();
  const int rows = cfg.rows();
  const int cols = cfg.cols();
  const std::size_t cells = static_cast<std::size_t>(rows) * cols;
  const int ns = cfg.num_slices;
  const double x0 = cfg.x_range[0], x1 = cfg.x_range[1];
  const double y0 = cfg.y_range[0], y1 = cfg.y_range[1];
  const double z0 = cfg.z_range[0], z1 = cfg.z_range[1];
  const double sh = cfg.slice_height();

  const bool want_slice_max = has_feature(cfg.slice_features, BevFeature::MaxHeight);
  const bool want_slice_min = has_feature(cfg.slice_features, BevFeature::MinHeight);
  const bool want_slice_cnt = has_feature(cfg.slice_features, BevFeature::Density);
  const bool want_cloud_max = has_feature(cfg.cloud_features, BevFeature::MaxHeight);
  const bool want_cloud_min = has_feature(cfg.cloud_features, BevFeature::MinHeight);
  const bool want_cloud_cnt = has_feature(cfg.cloud_features, BevFeature::Density);
  const bool want_slice = want_slice_max || want_slice_min || want_slice_cnt;
  const bool want_cloud = want_cloud_max || want_cloud_min || want_cloud_cnt;

  // Reductions first (order-insensitive), normalization after; this keeps the
  // result independent of input point order.
  std::vector<double> slice_max, slice_min, cloud_max, cloud_min;
  std::vector<std::int64_t> slice_cnt, cloud_cnt;
  if (want_slice_max) slice_max.assign(cells * ns, kNegInf);
  if (want_slice_min) slice_min.assign(cells * ns, kPosInf);
  if (want_slice_cnt) slice_cnt.assign(cells * ns, 0);
  if (want_cloud_max) cloud_max.assign(cells, kNegInf);
  if (want_cloud_min) cloud_min.assign(cells, kPosInf);
  if (want_cloud_cnt) cloud_cnt.assign(cells, 0);

  for (const Vec3& p : cloud.points) {
    if (p.x() < x0 || p.x() >= x1 || p.y() < y0 || p.y() >= y1 ||
        p.z() < z0 || p.z() > z1) {
      continue;
    }
    const int r = std::min(rows - 1,
                           static_cast<int>(std::floor((p.x() - x0) / cfg.cell_size)));
    const int c = std::min(cols - 1,
                           static_cast<int>(std::floor((p.y() - y0) / cfg.cell_size)));
    const std::size_t cell = static_cast<std::size_t>(r) * cols + c;
    if (want_cloud) {
      if (want_cloud_max) cloud_max[cell] = std::max(cloud_max[cell], p.z());
      if (want_cloud_min) cloud_min[cell] = std::min(cloud_min[cell], p.z());
      if (want_cloud_cnt) ++cloud_cnt[cell];
    }
    if (want_slice) {
      // Top z boundary joins the last slice.
      const int s = std::min(ns - 1,
                             static_cast<int>(std::floor((p.z() - z0) / sh)));
      const std::size_t idx = static_cast<std::size_t>(s) * cells + cell;
      if (want_slice_max) slice_max[idx] = std::max(slice_max[idx], p.z());
      if (want_slice_min) slice_min[idx] = std::min(slice_min[idx], p.z());
      if (want_slice_cnt) ++slice_cnt[idx];
    }
  }

  BevStack stack;
  stack.rows = rows;
  stack.cols = cols;
  stack.config_hash = bev_config_hash(cfg);
  stack.meta.reserve(cfg.layer_count());
  stack.data.reserve(static_cast<std::size_t>(cfg.layer_count()) * cells);

  for (int s = 0; s < ns && !cfg.slice_features.empty(); ++s) {
    const double bottom = z0 + s * sh;
    for (BevFeature f : cfg.slice_features) {
      stack.meta.push_back({BevGroup::Slice, f, s});
      const std::size_t base = static_cast<std::size_t>(s) * cells;
      for (std::size_t cell = 0; cell < cells; ++cell) {
        double v = 0.0;
        switch (f) {
          case BevFeature::MaxHeight:
            if (slice_max[base + cell] != kNegInf)
              v = (slice_max[base + cell] - bottom) / sh;
            break;
          case BevFeature::MinHeight:
            if (slice_min[base + cell] != kPosInf)
              v = (slice_min[base + cell] - bottom) / sh;
            break;
          case BevFeature::Density:
            v = density_value(slice_cnt[base + cell],
                              cfg.density_log_base_count);
            break;
        }
        stack.data.push_back(static_cast<float>(v));
      }
    }
  }
  for (BevFeature f : cfg.cloud_features) {
    stack.meta.push_back({BevGroup::Cloud, f, -1});
    for (std::size_t cell = 0; cell < cells; ++cell) {
      double v = 0.0;
      switch (f) {
        case BevFeature::MaxHeight:
          if (cloud_max[cell] != kNegInf) v = (cloud_max[cell] - z0) / (z1 - z0);
          break;
        case BevFeature::MinHeight:
          if (cloud_min[cell] != kPosInf) v = (cloud_min[cell] - z0) / (z1 - z0);
          break;
        case BevFeature::Density:
          v = density_value(cloud_cnt[cell], cfg.density_log_base_count);
          break;
      }
      stack.data.push_back(static_cast<float>(v));
    }
  }
  return stack;
}

StackDocument export_stack(const BevStack& stack) {
  StackDocument doc;
  doc.payload.reserve(stack.data.size() * 4);
  for (float f : stack.data) detail::push_f32_le(doc.payload, f);

  std::string& s = doc.sidecar;
  s += "rows " + std::to_string(stack.rows) + "\n";
  s += "cols " + std::to_string(stack.cols) + "\n";
  s += "layers " + std::to_string(stack.layer_count()) + "\n";
  s += "dtype float32\n";
  char hash_buf[32];
  std::snprintf(hash_buf, sizeof(hash_buf), "%016llx",
                static_cast<unsigned long long>(stack.config_hash));
  s += std::string("config_hash ") + hash_buf + "\n";
  for (int i = 0; i < stack.layer_count(); ++i) {
    const LayerMeta& m = stack.meta[i];
    s += "layer " + std::to_string(i) + ' ';
    s += (m.group == BevGroup::Slice) ? "slice " : "cloud ";
    s += feature_name(m.feature);
    s += ' ' + std::to_string(m.slice_index) + "\n";
  }
  return doc;
}

BevStack import_stack(const std::vector<std::uint8_t>& payload,
                      const std::string& sidecar) {
  BevStack stack;
  int layers = -1;
  bool seen_rows = false, seen_cols = false, seen_dtype = false;
  for (std::string_view line : detail::split_lines(sidecar)) {
    const auto fields = detail::split_fields(line);
    if (fields.empty()) continue;
    const std::string_view key = fields[0];
    if (key == "rows" && fields.size() == 2) {
      stack.rows = static_cast<int>(detail::parse_int(fields[1], "sidecar"));
      seen_rows = true;
    } else if (key == "cols" && fields.size() == 2) {
      stack.cols = static_cast<int>(detail::parse_int(fields[1], "sidecar"));
      seen_cols = true;
    } else if (key == "layers" && fields.size() == 2) {
      layers = static_cast<int>(detail::parse_int(fields[1], "sidecar"));
    } else if (key == "dtype" && fields.size() == 2) {
      if (fields[1] != "float32") {
        throw ParseError("unsupported stack dtype: " + std::string(fields[1]));
      }
      seen_dtype = true;
    } else if (key == "config_hash" && fields.size() == 2) {
      std::uint64_t h = 0;
      const auto sv = fields[1];
      auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), h, 16);
      if (ec != std::errc() || ptr != sv.data() + sv.size()) {
        throw ParseError("bad config_hash in sidecar");
      }
      stack.config_hash = h;
    } else if (key == "layer" && fields.size() == 5) {
      LayerMeta m;
      if (fields[2] == "slice") {
        m.group = BevGroup::Slice;
      } else if (fields[2] == "cloud") {
        m.group = BevGroup::Cloud;
      } else {
        throw ParseError("bad layer group in sidecar: " +
                         std::string(fields[2]));
      }
      m.feature = parse_feature(std::string(fields[3]));
      m.slice_index = static_cast<int>(detail::parse_int(fields[4], "sidecar"));
      stack.meta.push_back(m);
    } else {
      throw ParseError("unrecognized sidecar line: " + std::string(line));
    }
  }
  if (!seen_rows || !seen_cols || !seen_dtype || layers < 0) {
    throw MissingKey("sidecar missing rows/cols/layers/dtype");
  }
  if (layers != stack.layer_count()) {
    throw ParseError("sidecar declares " + std::to_string(layers) +
                     " layers but lists " + std::to_string(stack.layer_count()));
  }
  const std::size_t expected =
      static_cast<std::size_t>(layers) * stack.rows * stack.cols * 4;
  if (payload.size() != expected) {
    throw TruncatedFile("stack payload is " + std::to_string(payload.size()) +
                        " bytes, expected " + std::to_string(expected));
  }
  stack.data.resize(expected / 4);
  for (std::size_t i = 0; i < stack.data.size(); ++i) {
    stack.data[i] = detail::pull_f32_le(payload.data() + i * 4);
  }
  return stack;
}

std::vector<std::uint8_t> layer_to_gray(const BevStack& stack, int layer) {
  if (layer < 0 || layer >= stack.layer_count()) {
    throw OutOfBounds("layer index " + std::to_string(layer) + " outside 0.." +
                      std::to_string(stack.layer_count() - 1));
  }
  std::vector<std::uint8_t> gray(stack.layer_stride());
  const std::size_t base = layer * stack.layer_stride();
  for (std::size_t i = 0; i < gray.size(); ++i) {
    const double scaled = std::lround(stack.data[base + i] * 255.0);
    gray[i] = static_cast<std::uint8_t>(std::clamp(scaled, 0.0, 255.0));
  }
  return gray;
}

std::string write_bev_config(const BevConfig& cfg) {
  using detail::format_exact;
  std::string out;
  out += "x_range " + format_exact(cfg.x_range[0]) + ' ' +
         format_exact(cfg.x_range[1]) + "\n";
  out += "y_range " + format_exact(cfg.y_range[0]) + ' ' +
         format_exact(cfg.y_range[1]) + "\n";
  out += "z_range " + format_exact(cfg.z_range[0]) + ' ' +
         format_exact(cfg.z_range[1]) + "\n";
  out += "cell_size " + format_exact(cfg.cell_size) + "\n";
  out += "num_slices " + std::to_string(cfg.num_slices) + "\n";
  out += "slice_features";
  for (BevFeature f : cfg.slice_features) out += std::string(" ") + feature_name(f);
  out += "\n";
  out += "cloud_features";
  for (BevFeature f : cfg.cloud_features) out += std::string(" ") + feature_name(f);
  out += "\n";
  out += "density_log_base_count " +
         std::to_string(cfg.density_log_base_count) + "\n";
  return out;
}

BevConfig parse_bev_config(const std::string& text) {
  BevConfig cfg;
  cfg.slice_features.clear();
  cfg.cloud_features.clear();
  bool seen_x = false, seen_y = false, seen_z = false, seen_cell = false,
       seen_slices = false;
  for (std::string_view raw : detail::split_lines(text)) {
    const std::size_t hash_pos = raw.find('#');
    const std::string_view line =
        hash_pos == std::string_view::npos ? raw : raw.substr(0, hash_pos);
    const auto fields = detail::split_fields(line);
    if (fields.empty()) continue;
    const std::string_view key = fields[0];
    auto need = [&](std::size_t n) {
      if (fields.size() != n + 1) {
        throw MalformedLine(0, fields.size(),
                            "config key '" + std::string(key) + "' expects " +
                                std::to_string(n) + " values");
      }
    };
    if (key == "x_range") {
      need(2);
      cfg.x_range = {detail::parse_double(fields[1], "config"),
                     detail::parse_double(fields[2], "config")};
      seen_x = true;
    } else if (key == "y_range") {
      need(2);
      cfg.y_range = {detail::parse_double(fields[1], "config"),
                     detail::parse_double(fields[2], "config")};
      seen_y = true;
    } else if (key == "z_range") {
      need(2);
      cfg.z_range = {detail::parse_double(fields[1], "config"),
                     detail::parse_double(fields[2], "config")};
      seen_z = true;
    } else if (key == "cell_size") {
      need(1);
      cfg.cell_size = detail::parse_double(fields[1], "config");
      seen_cell = true;
    } else if (key == "num_slices") {
      need(1);
      cfg.num_slices = static_cast<int>(detail::parse_int(fields[1], "config"));
      seen_slices = true;
    } else if (key == "density_log_base_count") {
      need(1);
      cfg.density_log_base_count =
          static_cast<int>(detail::parse_int(fields[1], "config"));
    } else if (key == "slice_features") {
      for (std::size_t i = 1; i < fields.size(); ++i) {
        cfg.slice_features.push_back(parse_feature(std::string(fields[i])));
      }
    } else if (key == "cloud_features") {
      for (std::size_t i = 1; i < fields.size(); ++i) {
        cfg.cloud_features.push_back(parse_feature(std::string(fields[i])));
      }
    } else {
      throw ParseError("unknown config key: " + std::string(key));
    }
  }
  if (!seen_x || !seen_y || !seen_z || !seen_cell || !seen_slices) {
    throw MissingKey(
        "config needs x_range, y_range, z_range, cell_size, num_slices");
  }
  return cfg;
}

std::uint64_t bev_config_hash(const BevConfig& cfg) {
  return fnv1a64(write_bev_config(cfg));
}

}  // namespace cadet
