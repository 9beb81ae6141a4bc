#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "cadet/geometry.hpp"

namespace cadet {

enum class BevFeature { MaxHeight, MinHeight, Density };
enum class BevGroup { Slice, Cloud };

const char* feature_name(BevFeature feature);
BevFeature parse_feature(const std::string& name);  // throws ParseError

/// Rasterizer configuration. Slice features are computed per vertical slice
/// of z_range (num_slices equal slices); cloud features are computed over the
/// full column. Layer count = num_slices * |slice_features| + |cloud_features|.
struct BevConfig {
  std::array<double, 2> x_range{0.0, 70.0};   // meters forward
  std::array<double, 2> y_range{-40.0, 40.0}; // meters lateral
  std::array<double, 2> z_range{-0.2, 2.3};   // meters vertical
  double cell_size = 0.1;
  int num_slices = 5;
  std::vector<BevFeature> slice_features{BevFeature::MaxHeight};
  std::vector<BevFeature> cloud_features{BevFeature::Density};
  int density_log_base_count = 16;

  int rows() const;
  int cols() const;
  int layer_count() const;
  double slice_height() const;

  /// Throws EmptyConfig for zero layers, Error for other violations
  /// (non-positive cell size, empty ranges, duplicate features, ...).
  void validate() const;
};

/// Named configurations: "default" (5 MaxHeight slices + cloud Density),
/// "max3_density3" (3 slices of MaxHeight+Density), "max_min_density"
/// (cloud MaxHeight/MinHeight/Density only). Throws UnknownPreset.
BevConfig bev_preset(const std::string& name);

/// Eq.-style density normalization: min(1, log(n+1)/log(log_base_count)).
double density_value(std::int64_t n, int log_base_count = 16);

struct LayerMeta {
  BevGroup group = BevGroup::Cloud;
  BevFeature feature = BevFeature::Density;
  int slice_index = -1;  // -1 for cloud layers
};

/// Stack of float feature maps. Row r corresponds to x (forward), column c
/// to y (lateral); data is planar, layer-major then row-major.
struct BevStack {
  int rows = 0;
  int cols = 0;
  std::vector<LayerMeta> meta;
  std::vector<float> data;
  std::uint64_t config_hash = 0;

  int layer_count() const { return static_cast<int>(meta.size()); }
  std::size_t layer_stride() const {
    return static_cast<std::size_t>(rows) * cols;
  }
  float at(int layer, int r, int c) const {
    return data[layer * layer_stride() + static_cast<std::size_t>(r) * cols +
                c];
  }
};

/// Rasterize a Velodyne-frame cloud. Points outside any of the three ranges
/// are discarded (x/y half-open at the top, z closed so the upper boundary
/// joins the last slice). Empty cells hold 0 in every layer. Slice layers are
/// ordered slice-major (slice 0 features, slice 1 features, ...), followed by
/// the cloud layers.
BevStack rasterize(const PointCloud& cloud, const BevConfig& cfg);

/// Serialized stack: raw little-endian float32 payload plus a text sidecar
/// describing shape, layer metadata, and the config hash.
struct StackDocument {
  std::vector<std::uint8_t> payload;
  std::string sidecar;
};

StackDocument export_stack(const BevStack& stack);

/// Rebuild a stack from its two documents. Throws TruncatedFile when the
/// payload length disagrees with the sidecar shape, ParseError for sidecar
/// problems.
BevStack import_stack(const std::vector<std::uint8_t>& payload,
                      const std::string& sidecar);

/// One layer as an 8-bit grayscale buffer (value * 255, rounded, clamped)
/// for PNG inspection dumps.
std::vector<std::uint8_t> layer_to_gray(const BevStack& stack, int layer);

/// Canonical text form of a config (also the hashing pre-image).
std::string write_bev_config(const BevConfig& cfg);

/// Parse the key-value config format. Required keys: x_range, y_range,
/// z_range, cell_size, num_slices; optional: slice_features, cloud_features
/// (default empty) and density_log_base_count (default 16). '#' starts a
/// comment. Unknown keys raise ParseError, absent required keys MissingKey.
BevConfig parse_bev_config(const std::string& text);

/// FNV-1a of the canonical serialization.
std::uint64_t bev_config_hash(const BevConfig& cfg);

}  // namespace cadet
