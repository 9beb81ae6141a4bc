#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "cadet/bev.hpp"
#include "cadet/hash.hpp"
#include "cadet/random.hpp"

using namespace cadet;

namespace {

// Independent recomputation: bucket per cell, then evaluate each feature from
// the documented definitions. Shares nothing with the streaming rasterizer
// except the config arithmetic it must mirror bit for bit.
std::vector<float> oracle_rasterize(const PointCloud& cloud,
                                    const BevConfig& cfg) {
  const int rows = cfg.rows();
  const int cols = cfg.cols();
  const std::size_t cells = static_cast<std::size_t>(rows) * cols;
  const int ns = cfg.num_slices;
  const double x0 = cfg.x_range[0], x1 = cfg.x_range[1];
  const double y0 = cfg.y_range[0], y1 = cfg.y_range[1];
  const double z0 = cfg.z_range[0], z1 = cfg.z_range[1];
  const double sh = cfg.slice_height();
  const double neg_inf = -std::numeric_limits<double>::infinity();
  const double pos_inf = std::numeric_limits<double>::infinity();

  std::vector<double> col_max(cells, neg_inf), col_min(cells, pos_inf);
  std::vector<std::int64_t> col_cnt(cells, 0);
  std::vector<double> sl_max(cells * ns, neg_inf), sl_min(cells * ns, pos_inf);
  std::vector<std::int64_t> sl_cnt(cells * ns, 0);

  for (const Vec3& p : cloud.points) {
    if (p.x() < x0 || p.x() >= x1 || p.y() < y0 || p.y() >= y1 || p.z() < z0 ||
        p.z() > z1) {
      continue;
    }
    const int r = std::min(
        rows - 1, static_cast<int>(std::floor((p.x() - x0) / cfg.cell_size)));
    const int c = std::min(
        cols - 1, static_cast<int>(std::floor((p.y() - y0) / cfg.cell_size)));
    const int s =
        std::min(ns - 1, static_cast<int>(std::floor((p.z() - z0) / sh)));
    const std::size_t cell = static_cast<std::size_t>(r) * cols + c;
    col_max[cell] = std::max(col_max[cell], p.z());
    col_min[cell] = std::min(col_min[cell], p.z());
    ++col_cnt[cell];
    const std::size_t idx = static_cast<std::size_t>(s) * cells + cell;
    sl_max[idx] = std::max(sl_max[idx], p.z());
    sl_min[idx] = std::min(sl_min[idx], p.z());
    ++sl_cnt[idx];
  }

  std::vector<float> data;
  data.reserve(cells * cfg.layer_count());
  if (!cfg.slice_features.empty()) {
    for (int s = 0; s < ns; ++s) {
      const double bottom = z0 + s * sh;
      for (BevFeature f : cfg.slice_features) {
        for (std::size_t cell = 0; cell < cells; ++cell) {
          const std::size_t idx = static_cast<std::size_t>(s) * cells + cell;
          double v = 0.0;
          if (f == BevFeature::MaxHeight && sl_max[idx] != neg_inf)
            v = (sl_max[idx] - bottom) / sh;
          if (f == BevFeature::MinHeight && sl_min[idx] != pos_inf)
            v = (sl_min[idx] - bottom) / sh;
          if (f == BevFeature::Density)
            v = density_value(sl_cnt[idx], cfg.density_log_base_count);
          data.push_back(static_cast<float>(v));
        }
      }
    }
  }
  for (BevFeature f : cfg.cloud_features) {
    for (std::size_t cell = 0; cell < cells; ++cell) {
      double v = 0.0;
      if (f == BevFeature::MaxHeight && col_max[cell] != neg_inf)
        v = (col_max[cell] - z0) / (z1 - z0);
      if (f == BevFeature::MinHeight && col_min[cell] != pos_inf)
        v = (col_min[cell] - z0) / (z1 - z0);
      if (f == BevFeature::Density)
        v = density_value(col_cnt[cell], cfg.density_log_base_count);
      data.push_back(static_cast<float>(v));
    }
  }
  return data;
}

PointCloud random_cloud(Rng& rng, int n, const BevConfig& cfg) {
  PointCloud cloud;
  for (int i = 0; i < n; ++i) {
    // Mostly in range, with some strays to exercise the filters and a few
    // points pinned to the closed top z boundary.
    double x = rng.uniform(cfg.x_range[0] - 5, cfg.x_range[1] + 5);
    double y = rng.uniform(cfg.y_range[0] - 5, cfg.y_range[1] + 5);
    double z = rng.uniform(cfg.z_range[0] - 1, cfg.z_range[1] + 1);
    if (rng.uniform() < 0.02) z = cfg.z_range[1];
    cloud.points.emplace_back(x, y, z);
  }
  return cloud;
}

BevConfig small_config() {
  BevConfig cfg;
  cfg.x_range = {0.0, 8.0};
  cfg.y_range = {-4.0, 4.0};
  cfg.z_range = {-0.5, 2.5};
  cfg.cell_size = 0.5;
  cfg.num_slices = 3;
  cfg.slice_features = {BevFeature::MaxHeight, BevFeature::MinHeight,
                        BevFeature::Density};
  cfg.cloud_features = {BevFeature::MaxHeight, BevFeature::MinHeight,
                        BevFeature::Density};
  return cfg;
}

}  // namespace

TEST_CASE("presets expose the documented layer structures") {
  const BevConfig def = bev_preset("default");
  CHECK(def.layer_count() == 6);
  CHECK(def.num_slices == 5);
  CHECK(def.rows() == 700);
  CHECK(def.cols() == 800);

  const BevStack stack = rasterize(PointCloud{}, def);
  REQUIRE(stack.layer_count() == 6);
  for (int s = 0; s < 5; ++s) {
    CHECK(stack.meta[s].group == BevGroup::Slice);
    CHECK(stack.meta[s].feature == BevFeature::MaxHeight);
    CHECK(stack.meta[s].slice_index == s);
  }
  CHECK(stack.meta[5].group == BevGroup::Cloud);
  CHECK(stack.meta[5].feature == BevFeature::Density);
  CHECK(stack.meta[5].slice_index == -1);
  for (float v : stack.data) CHECK(v == 0.0f);

  const BevConfig six = bev_preset("max3_density3");
  CHECK(six.layer_count() == 6);
  CHECK(six.num_slices == 3);
  int slice_max = 0, slice_density = 0;
  const BevStack sstack = rasterize(PointCloud{}, six);
  for (const LayerMeta& m : sstack.meta) {
    CHECK(m.group == BevGroup::Slice);
    if (m.feature == BevFeature::MaxHeight) ++slice_max;
    if (m.feature == BevFeature::Density) ++slice_density;
  }
  CHECK(slice_max == 3);
  CHECK(slice_density == 3);

  const BevConfig three = bev_preset("max_min_density");
  CHECK(three.layer_count() == 3);
  const BevStack cstack = rasterize(PointCloud{}, three);
  for (const LayerMeta& m : cstack.meta) {
    CHECK(m.group == BevGroup::Cloud);
    CHECK(m.slice_index == -1);
  }

  CHECK_THROWS_AS(bev_preset("no_such_preset"), UnknownPreset);
}

TEST_CASE("density normalization hits its anchor values") {
  CHECK(std::abs(density_value(0) - 0.0) <= 1e-12);
  CHECK(std::abs(density_value(3) - 0.5) <= 1e-12);
  CHECK(std::abs(density_value(15) - 1.0) <= 1e-12);
  CHECK(std::abs(density_value(1000000) - 1.0) <= 1e-12);
  // Monotone below saturation, capped at 1 above it.
  for (int n = 0; n < 15; ++n) {
    CHECK(density_value(n) < density_value(n + 1));
  }
  CHECK(density_value(64, 64) == doctest::Approx(1.0));
  CHECK(std::abs(density_value(7, 64) - std::log(8.0) / std::log(64.0)) <=
        1e-12);
}

TEST_CASE("grid shape rounds partial cells up") {
  BevConfig cfg = bev_preset("default");
  cfg.x_range = {0.0, 1.0};
  cfg.y_range = {0.0, 1.0};
  cfg.cell_size = 0.3;
  CHECK(cfg.rows() == 4);
  CHECK(cfg.cols() == 4);
  cfg.cell_size = 0.25;
  CHECK(cfg.rows() == 4);
  CHECK(cfg.num_slices == 5);
  CHECK(cfg.slice_height() == doctest::Approx((2.3 - -0.2) / 5));
}

TEST_CASE("hand-checked rasterization of a 2x2 grid") {
  BevConfig cfg;
  cfg.x_range = {0.0, 1.0};
  cfg.y_range = {0.0, 1.0};
  cfg.z_range = {0.0, 2.0};
  cfg.cell_size = 0.5;
  cfg.num_slices = 2;
  cfg.slice_features = {BevFeature::MaxHeight};
  cfg.cloud_features = {BevFeature::Density};

  PointCloud cloud;
  cloud.points.emplace_back(0.25, 0.25, 0.4);   // cell (0,0), slice 0
  cloud.points.emplace_back(0.25, 0.25, 1.2);   // cell (0,0), slice 1
  cloud.points.emplace_back(0.75, 0.25, 2.0);   // z at the closed top boundary
  cloud.points.emplace_back(0.25, 0.75, 0.0);   // max == slice bottom
  cloud.points.emplace_back(1.0, 0.25, 0.5);    // x at open top: dropped
  cloud.points.emplace_back(0.25, 1.0, 0.5);    // y at open top: dropped
  cloud.points.emplace_back(0.25, 0.25, 2.001); // above z range: dropped
  cloud.points.emplace_back(0.25, 0.25, -0.01); // below z range: dropped

  const BevStack stack = rasterize(cloud, cfg);
  REQUIRE(stack.rows == 2);
  REQUIRE(stack.cols == 2);
  REQUIRE(stack.layer_count() == 3);

  // Slice 0 MaxHeight, normalized by slice height 1.
  CHECK(stack.at(0, 0, 0) == doctest::Approx(0.4));
  CHECK(stack.at(0, 0, 1) == 0.0f);  // point at the slice bottom
  CHECK(stack.at(0, 1, 0) == 0.0f);
  CHECK(stack.at(0, 1, 1) == 0.0f);

  // Slice 1 MaxHeight; the z = 2.0 point joins this last slice.
  CHECK(stack.at(1, 0, 0) == doctest::Approx(0.2));
  CHECK(stack.at(1, 1, 0) == doctest::Approx(1.0));
  CHECK(stack.at(1, 0, 1) == 0.0f);

  // Cloud density over the full column.
  const double l16 = std::log(16.0);
  CHECK(stack.at(2, 0, 0) == doctest::Approx(std::log(3.0) / l16));
  CHECK(stack.at(2, 0, 1) == doctest::Approx(std::log(2.0) / l16));
  CHECK(stack.at(2, 1, 0) == doctest::Approx(std::log(2.0) / l16));
  CHECK(stack.at(2, 1, 1) == 0.0f);
}

TEST_CASE("rasterization is invariant to input point order") {
  Rng rng(41);
  const BevConfig cfg = small_config();
  PointCloud cloud = random_cloud(rng, 3000, cfg);

  const BevStack a = rasterize(cloud, cfg);
  PointCloud shuffled = cloud;
  std::mt19937 urbg(1234);
  std::shuffle(shuffled.points.begin(), shuffled.points.end(), urbg);
  const BevStack b = rasterize(shuffled, cfg);

  CHECK(a.data == b.data);
  CHECK(a.config_hash == b.config_hash);
}

TEST_CASE("adding a point never worsens a cell's features") {
  Rng rng(42);
  const BevConfig cfg = small_config();
  const std::size_t cells =
      static_cast<std::size_t>(cfg.rows()) * cfg.cols();

  for (int trial = 0; trial < 10; ++trial) {
    PointCloud cloud = random_cloud(rng, 500, cfg);
    const BevStack before = rasterize(cloud, cfg);

    // Occupancy per slice-cell and per column, for gating the MinHeight
    // comparison (empty cells render as 0, which any point may exceed).
    const BevConfig density_only = [&] {
      BevConfig c = cfg;
      c.slice_features = {BevFeature::Density};
      c.cloud_features = {BevFeature::Density};
      return c;
    }();
    const BevStack occupancy = rasterize(cloud, density_only);

    cloud.points.emplace_back(rng.uniform(cfg.x_range[0], cfg.x_range[1]),
                              rng.uniform(cfg.y_range[0], cfg.y_range[1]),
                              rng.uniform(cfg.z_range[0], cfg.z_range[1]));
    const BevStack after = rasterize(cloud, cfg);

    for (int layer = 0; layer < before.layer_count(); ++layer) {
      const LayerMeta& m = before.meta[layer];
      // Occupancy stack layout: one density layer per slice, then the column.
      const int occupancy_layer =
          m.group == BevGroup::Slice ? m.slice_index : cfg.num_slices;
      for (std::size_t cell = 0; cell < cells; ++cell) {
        const float was = before.data[layer * cells + cell];
        const float now = after.data[layer * cells + cell];
        if (m.feature == BevFeature::MinHeight) {
          if (occupancy.data[occupancy_layer * cells + cell] > 0.0f) {
            CHECK(now <= was);
          }
        } else {
          CHECK(now >= was);
        }
      }
    }
  }
}

TEST_CASE("all emitted feature values stay inside [0, 1]") {
  Rng rng(43);
  for (const char* preset : {"default", "max3_density3", "max_min_density"}) {
    BevConfig cfg = bev_preset(preset);
    // Shrink the grid so the loop below stays cheap.
    cfg.x_range = {0.0, 10.0};
    cfg.y_range = {-5.0, 5.0};
    const PointCloud cloud = random_cloud(rng, 5000, cfg);
    const BevStack stack = rasterize(cloud, cfg);
    for (float v : stack.data) {
      CHECK(v >= 0.0f);
      CHECK(v <= 1.0f);
    }
  }
}

TEST_CASE("rasterizer matches the brute-force recomputation bit for bit") {
  Rng rng(44);
  for (int trial = 0; trial < 20; ++trial) {
    BevConfig cfg = small_config();
    if (trial % 3 == 1) {
      cfg.slice_features = {BevFeature::Density};
      cfg.cloud_features.clear();
    } else if (trial % 3 == 2) {
      cfg.slice_features.clear();
      cfg.num_slices = 1;
      cfg.cloud_features = {BevFeature::MaxHeight, BevFeature::MinHeight,
                            BevFeature::Density};
    }
    const PointCloud cloud = random_cloud(rng, 2000, cfg);
    const BevStack stack = rasterize(cloud, cfg);
    const std::vector<float> expected = oracle_rasterize(cloud, cfg);
    REQUIRE(stack.data.size() == expected.size());
    CHECK(stack.data == expected);
  }
}

TEST_CASE("stacks survive export and import") {
  Rng rng(45);
  const BevConfig cfg = small_config();
  const BevStack stack = rasterize(random_cloud(rng, 2000, cfg), cfg);

  const StackDocument doc = export_stack(stack);
  CHECK(doc.payload.size() == stack.data.size() * 4);
  CHECK(doc.sidecar.rfind("rows 16\ncols 16\nlayers 12\ndtype float32\n"
                          "config_hash ",
                          0) == 0);

  const BevStack back = import_stack(doc.payload, doc.sidecar);
  CHECK(back.rows == stack.rows);
  CHECK(back.cols == stack.cols);
  CHECK(back.config_hash == stack.config_hash);
  CHECK(back.data == stack.data);
  REQUIRE(back.meta.size() == stack.meta.size());
  for (std::size_t i = 0; i < stack.meta.size(); ++i) {
    CHECK(back.meta[i].group == stack.meta[i].group);
    CHECK(back.meta[i].feature == stack.meta[i].feature);
    CHECK(back.meta[i].slice_index == stack.meta[i].slice_index);
  }

  SUBCASE("short payloads are rejected") {
    auto payload = doc.payload;
    payload.pop_back();
    CHECK_THROWS_AS(import_stack(payload, doc.sidecar), TruncatedFile);
  }
  SUBCASE("sidecar noise is rejected") {
    CHECK_THROWS_AS(import_stack(doc.payload, doc.sidecar + "mystery 1\n"),
                    ParseError);
    CHECK_THROWS_AS(import_stack(doc.payload, "layers 3\n"), ParseError);
  }
}

TEST_CASE("config files round-trip and validate") {
  Rng rng(46);
  for (int trial = 0; trial < 100; ++trial) {
    BevConfig cfg;
    cfg.x_range = {rng.uniform(-10, 0), rng.uniform(1, 50)};
    cfg.y_range = {rng.uniform(-50, -1), rng.uniform(0, 50)};
    cfg.z_range = {rng.uniform(-2, 0), rng.uniform(1, 4)};
    cfg.cell_size = rng.uniform(0.05, 1.0);
    cfg.num_slices = rng.uniform_int(1, 6);
    cfg.slice_features.clear();
    cfg.cloud_features.clear();
    if (rng.uniform() < 0.7) cfg.slice_features.push_back(BevFeature::MaxHeight);
    if (rng.uniform() < 0.3) cfg.slice_features.push_back(BevFeature::MinHeight);
    if (rng.uniform() < 0.5) cfg.cloud_features.push_back(BevFeature::Density);
    if (cfg.slice_features.empty() && cfg.cloud_features.empty()) {
      cfg.cloud_features.push_back(BevFeature::MaxHeight);
    }
    cfg.density_log_base_count = rng.uniform_int(2, 64);

    const std::string text = write_bev_config(cfg);
    const BevConfig back = parse_bev_config(text);
    CHECK(back.x_range == cfg.x_range);
    CHECK(back.y_range == cfg.y_range);
    CHECK(back.z_range == cfg.z_range);
    CHECK(back.cell_size == cfg.cell_size);
    CHECK(back.num_slices == cfg.num_slices);
    CHECK(back.slice_features == cfg.slice_features);
    CHECK(back.cloud_features == cfg.cloud_features);
    CHECK(back.density_log_base_count == cfg.density_log_base_count);
    CHECK(write_bev_config(back) == text);
    CHECK(bev_config_hash(back) == bev_config_hash(cfg));
  }
}

TEST_CASE("config parsing and validation failures") {
  const std::string good = write_bev_config(bev_preset("default"));

  CHECK_THROWS_AS(parse_bev_config("x_range 0 70\n"), MissingKey);
  CHECK_THROWS_AS(parse_bev_config(good + "mystery 3\n"), ParseError);
  CHECK_THROWS_AS(parse_bev_config(good + "slice_features Turbo\n"), ParseError);
  CHECK_NOTHROW(parse_bev_config(good + "# a comment\n"));

  BevConfig cfg = bev_preset("default");
  cfg.cell_size = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);

  cfg = bev_preset("default");
  cfg.x_range = {10, 10};
  CHECK_THROWS_AS(cfg.validate(), Error);

  cfg = bev_preset("default");
  cfg.slice_features = {BevFeature::MaxHeight, BevFeature::MaxHeight};
  CHECK_THROWS_AS(cfg.validate(), Error);

  cfg = bev_preset("default");
  cfg.slice_features.clear();
  cfg.cloud_features.clear();
  CHECK_THROWS_AS(cfg.validate(), EmptyConfig);
  CHECK_THROWS_AS(rasterize(PointCloud{}, cfg), EmptyConfig);
}

TEST_CASE("config hash fingerprints the canonical serialization") {
  const BevConfig def = bev_preset("default");
  CHECK(bev_config_hash(def) == fnv1a64(write_bev_config(def)));

  BevConfig tweaked = def;
  tweaked.cell_size = 0.2;
  CHECK(bev_config_hash(tweaked) != bev_config_hash(def));

  tweaked = def;
  tweaked.density_log_base_count = 32;
  CHECK(bev_config_hash(tweaked) != bev_config_hash(def));
}

TEST_CASE("layer_to_gray quantizes one layer to bytes") {
  BevConfig cfg;
  cfg.x_range = {0.0, 1.0};
  cfg.y_range = {0.0, 1.0};
  cfg.z_range = {0.0, 1.0};
  cfg.cell_size = 0.5;
  cfg.num_slices = 1;
  cfg.slice_features = {BevFeature::MaxHeight};
  cfg.cloud_features.clear();

  PointCloud cloud;
  cloud.points.emplace_back(0.25, 0.25, 1.0);  // value 1.0
  cloud.points.emplace_back(0.75, 0.25, 0.4);  // value 0.4
  const BevStack stack = rasterize(cloud, cfg);

  const auto gray = layer_to_gray(stack, 0);
  REQUIRE(gray.size() == 4);
  CHECK(gray[0] == 255);
  CHECK(gray[2] == 102);  // round(0.4 * 255)
  CHECK(gray[1] == 0);
  CHECK(gray[3] == 0);

  CHECK_THROWS_AS(layer_to_gray(stack, 1), OutOfBounds);
  CHECK_THROWS_AS(layer_to_gray(stack, -1), OutOfBounds);
}
