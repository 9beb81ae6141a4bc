#include "cadet/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

#include "cadet/hash.hpp"
#include "cadet/random.hpp"
#include "internal_util.hpp"

namespace cadet {
namespace {

namespace fs = std::filesystem;

// Re-throw parse failures with the offending file prepended, preserving the
// exception type so callers can still catch the specific condition.
template <typename Fn>
auto with_path(const fs::path& path, Fn&& fn) {
  try {
    return fn();
  } catch (const MalformedLine& e) {
    throw MalformedLine(e.line_number, e.field_count,
                        path.string() + ": " + e.what());
  } catch (const TruncatedFile& e) {
    throw TruncatedFile(path.string() + ": " + e.what());
  } catch (const MissingKey& e) {
    throw MissingKey(path.string() + ": " + e.what());
  } catch (const MalformedMatrix& e) {
    throw MalformedMatrix(path.string() + ": " + e.what());
  } catch (const NonNumericField& e) {
    throw NonNumericField(path.string() + ": " + e.what());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string camera_canonical(const CameraModel& cam) {
  using detail::format_exact;
  return "camera " + format_exact(cam.fx) + ' ' + format_exact(cam.fy) + ' ' +
         format_exact(cam.cx) + ' ' + format_exact(cam.cy) + ' ' +
         std::to_string(cam.width) + ' ' + std::to_string(cam.height) + "\n";
}

std::string rig_canonical(const LidarRig& rig) {
  using detail::format_exact;
  return "rig " + std::to_string(rig.channels) + ' ' +
         format_exact(rig.vertical_fov_low) + ' ' +
         format_exact(rig.vertical_fov_high) + ' ' +
         format_exact(rig.horizontal_step) + ' ' +
         format_exact(rig.max_range) + ' ' + format_exact(rig.mount_height) +
         ' ' + format_exact(rig.range_noise_sigma) + "\n";
}

std::string scene_params_canonical(const SceneParams& p) {
  using detail::format_exact;
  std::string out;
  out += "mixture " + format_exact(p.mixture.cars_per_scene) + ' ' +
         format_exact(p.mixture.pedestrians_per_scene) + ' ' +
         std::to_string(p.mixture.fences) + ' ' +
         std::to_string(p.mixture.walls) + "\n";
  out += "x_bounds " + format_exact(p.x_bounds[0]) + ' ' +
         format_exact(p.x_bounds[1]) + "\n";
  out += "y_bounds " + format_exact(p.y_bounds[0]) + ' ' +
         format_exact(p.y_bounds[1]) + "\n";
  out += "footprint_margin " + format_exact(p.footprint_margin) + "\n";
  out += "max_attempts " + std::to_string(p.max_attempts) + "\n";
  out += "car_clearance " + format_exact(p.car_clearance) + "\n";
  out += "pedestrian_clearance " + format_exact(p.pedestrian_clearance) + "\n";
  out += "attitude_jitter_deg " + format_exact(p.attitude_jitter_deg) + "\n";
  return out;
}

std::string hash_hex(std::uint64_t h) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

GroundPlane scene_ground_plane(const Scene& scene, double mount_height) {
  GroundPlane plane;
  plane.normal = Vec3(0, -1, 0);
  // Camera height above the z=0 ground: the mount point rides the tilted
  // vehicle, so pitch/roll shave a cosine factor off the mast height.
  plane.d =
      (attitude_correction(scene.attitude) * Vec3(0, 0, mount_height)).z();
  return plane;
}

int parse_sample_stem(const std::string& stem) {
  if (stem.size() != 6 ||
      !std::all_of(stem.begin(), stem.end(),
                   [](char c) { return c >= '0' && c <= '9'; })) {
    return -1;
  }
  return std::stoi(stem);
}

std::vector<int> indices_in_dir(const fs::path& dir, const std::string& ext) {
  std::vector<int> indices;
  if (!fs::exists(dir)) return indices;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const fs::path& p = entry.path();
    if (p.extension() != ext) continue;
    const int idx = parse_sample_stem(p.stem().string());
    if (idx >= 0) indices.push_back(idx);
  }
  std::sort(indices.begin(), indices.end());
  return indices;
}

CameraModel camera_from_calib(const CalibrationSet& calib, int width,
                              int height) {
  return CameraModel::pinhole(calib.p2(0, 0), calib.p2(1, 1), calib.p2(0, 2),
                              calib.p2(1, 2), width, height);
}

void depth_color(double depth, std::uint8_t& r, std::uint8_t& g,
                 std::uint8_t& b) {
  // Linear in 1/depth between 2 m (red) and 70 m (blue).
  constexpr double inv_near = 1.0 / 2.0;
  constexpr double inv_far = 1.0 / 70.0;
  const double s =
      std::clamp((1.0 / depth - inv_far) / (inv_near - inv_far), 0.0, 1.0);
  r = static_cast<std::uint8_t>(std::lround(255.0 * s));
  g = 0;
  b = static_cast<std::uint8_t>(std::lround(255.0 * (1.0 - s)));
}

void draw_dot(Image& img, int u, int v, std::uint8_t r, std::uint8_t g,
              std::uint8_t b) {
  for (int dv = -1; dv <= 1; ++dv) {
    for (int du = -1; du <= 1; ++du) {
      if (img.in_bounds(u + du, v + dv)) img.set(u + du, v + dv, r, g, b);
    }
  }
}

}  // namespace

void GenerateOptions::validate() const {
  if (samples < 1) throw Error("samples must be >= 1");
  if (reset_interval < 1) throw Error("reset_interval must be >= 1");
  if (max_step < 0) throw Error("max_step must be >= 0");
  if (camera.width <= 0 || camera.height <= 0 || !(camera.fx > 0) ||
      !(camera.fy > 0)) {
    throw Error("camera model is degenerate");
  }
  scene.validate();
  rig.validate();
}

GenerateReport generate_dataset(const GenerateOptions& opts,
                                const fs::path& out_dir) {
  opts.validate();
  DatasetLayout layout{out_dir};
  std::error_code ec;
  for (const fs::path& dir :
       {layout.label_dir(), layout.calib_dir(), layout.velodyne_dir(),
        layout.plane_dir(), layout.image_dir()}) {
    fs::create_directories(dir, ec);
    if (ec) throw IoError(dir.string() + ": " + ec.message());
  }
  if (opts.write_scenes) {
    fs::create_directories(layout.scene_dir(), ec);
    if (ec) throw IoError(layout.scene_dir().string() + ": " + ec.message());
  }

  const CalibrationSet calib = CalibrationSet::for_camera(
      opts.camera, velodyne_to_camera_transform());
  const std::string calib_text = write_calib_file(calib);

  LabelOptions label_opts = opts.labels;
  label_opts.mount_height = opts.rig.mount_height;  // camera rides the mast

  GenerateReport report;
  ManifestInfo manifest;
  manifest.seed = opts.seed;
  manifest.samples = opts.samples;
  manifest.reset_interval = opts.reset_interval;
  manifest.hashes["camera"] = hash_hex(fnv1a64(camera_canonical(opts.camera)));
  manifest.hashes["rig"] = hash_hex(fnv1a64(rig_canonical(opts.rig)));
  manifest.hashes["scene_params"] =
      hash_hex(fnv1a64(scene_params_canonical(opts.scene)));

  Scene scene;
  RigidTransform pose;
  std::string plane_text;
  Rng walk(0);

  for (int i = 0; i < opts.samples; ++i) {
    const int interval = i / opts.reset_interval;
    const int step = i % opts.reset_interval;
    if (step == 0) {
      const std::uint64_t interval_seed = derive_seed(opts.seed, interval);
      scene = generate_scene(opts.scene, interval_seed);
      walk = Rng(derive_seed(interval_seed, 0x77a1d));
      pose = default_camera_pose(opts.rig.mount_height, scene.attitude);
      plane_text =
          write_plane_file(scene_ground_plane(scene, opts.rig.mount_height));
    } else {
      // Bounded random walk, clamped to the spawn area so objects cannot
      // drift out of view over a long interval.
      for (SceneObject& obj : scene.objects) {
        const double dx = walk.uniform(-opts.max_step, opts.max_step);
        const double dy = walk.uniform(-opts.max_step, opts.max_step);
        obj.center.x() = std::clamp(obj.center.x() + dx,
                                    opts.scene.x_bounds[0],
                                    opts.scene.x_bounds[1]);
        obj.center.y() = std::clamp(obj.center.y() + dy,
                                    opts.scene.y_bounds[0],
                                    opts.scene.y_bounds[1]);
      }
    }

    const VelodyneScan scan = raycast_lidar(scene, opts.rig);
    const Image image = render_image(scene, opts.camera, pose);
    const auto candidates = ground_truth_labels(scene, opts.camera, label_opts);

    std::vector<ObjectLabel> emitted;
    ManifestSample sample_row;
    sample_row.name = sample_name(i);
    for (const GroundTruthObject& gt : candidates) {
      const OcclusionVerdict verdict = scene_occlusion_verdict(
          scene, opts.camera, pose, gt.corners, gt.object_index);
      ++report.oracle_comparisons;
      if (!verdict.occluded != gt.truly_visible) ++report.oracle_disagreements;
      if (verdict.occluded) continue;
      ObjectLabel label = gt.label;
      // The flag encodes the box verdict, not the corner tally: 2 would mark
      // an occluded object, but those are dropped, so emitted labels carry 0.
      // Value 1 is never written.
      label.occlusion_flag = 0;
      ++report.class_counts[label.class_name];
      if (label.class_name == "Car") ++sample_row.cars;
      if (label.class_name == "Pedestrian") ++sample_row.pedestrians;
      emitted.push_back(std::move(label));
    }
    sample_row.labeled = static_cast<long>(emitted.size());
    report.labeled_objects += sample_row.labeled;
    manifest.per_sample.push_back(sample_row);

    write_text_file(layout.label_path(i), write_label_file(emitted));
    write_text_file(layout.calib_path(i), calib_text);
    write_binary_file(layout.velodyne_path(i), write_velodyne_bin(scan));
    write_text_file(layout.plane_path(i), plane_text);
    write_png(layout.image_path(i), image);
    if (opts.write_scenes) {
      write_text_file(layout.scene_path(i),
                      write_scene_file({scene, opts.rig, opts.camera}));
    }
  }

  report.samples = opts.samples;
  manifest.labeled_objects = report.labeled_objects;
  manifest.oracle_comparisons = report.oracle_comparisons;
  manifest.oracle_disagreements = report.oracle_disagreements;
  manifest.class_counts = report.class_counts;
  write_text_file(layout.manifest_path(), write_manifest(manifest));

  // Alternating intervals form the train/val split so consecutive samples
  // (near-duplicates within an interval) never straddle it.
  std::string train, val;
  for (int i = 0; i < opts.samples; ++i) {
    const int interval = i / opts.reset_interval;
    (interval % 2 == 0 ? train : val) += sample_name(i) + "\n";
  }
  write_text_file(layout.train_split_path(), train);
  write_text_file(layout.val_split_path(), val);
  return report;
}

std::vector<int> dataset_indices(const DatasetLayout& layout) {
  return indices_in_dir(layout.label_dir(), ".txt");
}

Sample load_sample(const DatasetLayout& layout, int index) {
  Sample sample;
  sample.index = index;
  for (const fs::path& p :
       {layout.label_path(index), layout.calib_path(index),
        layout.velodyne_path(index), layout.plane_path(index),
        layout.image_path(index)}) {
    if (!fs::exists(p)) {
      throw MissingSample("sample " + sample_name(index) + " is missing " +
                          p.string());
    }
  }
  sample.labels = with_path(layout.label_path(index), [&] {
    return parse_label_file(read_text_file(layout.label_path(index)));
  });
  sample.calib = with_path(layout.calib_path(index), [&] {
    return parse_calib_file(read_text_file(layout.calib_path(index)));
  });
  sample.scan = with_path(layout.velodyne_path(index), [&] {
    return read_velodyne_bin(read_binary_file(layout.velodyne_path(index)));
  });
  sample.plane = with_path(layout.plane_path(index), [&] {
    return parse_plane_file(read_text_file(layout.plane_path(index)));
  });
  sample.image = read_png(layout.image_path(index));
  if (fs::exists(layout.scene_path(index))) {
    sample.scene = with_path(layout.scene_path(index), [&] {
      return parse_scene_file(read_text_file(layout.scene_path(index)));
    });
    sample.has_scene = true;
    const RigidTransform pose = default_camera_pose(
        sample.scene.rig.mount_height, sample.scene.scene.attitude);
    sample.depth = render_depth(sample.scene.scene, sample.scene.camera, pose);
  }
  return sample;
}

Image project_overlay(const Sample& sample) {
  Image out = sample.image;
  const CameraModel cam =
      camera_from_calib(sample.calib, out.width, out.height);
  const Mat3 rot = sample.calib.tr_velo_to_cam.leftCols<3>();
  const Vec3 trans = sample.calib.tr_velo_to_cam.col(3);
  for (const Vec3& p : sample.scan.cloud.points) {
    const Vec3 q = rot * p + trans;
    const auto proj = try_project(q, cam);
    if (!proj) continue;
    const int u = static_cast<int>(std::floor(proj->u));
    const int v = static_cast<int>(std::floor(proj->v));
    if (!out.in_bounds(u, v)) continue;
    std::uint8_t r, g, b;
    depth_color(proj->depth, r, g, b);
    out.set(u, v, r, g, b);
  }
  return out;
}

Image vertex_overlay(const Sample& sample) {
  if (!sample.has_scene) {
    throw Error("vertex overlay needs the scenes/ sidecar for sample " +
                sample_name(sample.index));
  }
  Image out = sample.image;
  LabelOptions opts;
  opts.mount_height = sample.scene.rig.mount_height;
  const RigidTransform pose = default_camera_pose(
      sample.scene.rig.mount_height, sample.scene.scene.attitude);
  const auto candidates =
      ground_truth_labels(sample.scene.scene, sample.scene.camera, opts);
  for (const GroundTruthObject& gt : candidates) {
    const OcclusionVerdict verdict =
        scene_occlusion_verdict(sample.scene.scene, sample.scene.camera, pose,
                                gt.corners, gt.object_index);
    for (int c = 0; c < 8; ++c) {
      const auto& proj = verdict.vertices.projected[c];
      if (!proj) continue;
      const int u = static_cast<int>(std::floor(proj->u));
      const int v = static_cast<int>(std::floor(proj->v));
      if (verdict.vertices.occluded[c]) {
        draw_dot(out, u, v, 220, 40, 40);
      } else {
        draw_dot(out, u, v, 40, 220, 40);
      }
    }
  }
  return out;
}

RasterizeReport rasterize_dataset(const DatasetLayout& layout,
                                  const BevConfig& cfg, int begin, int end,
                                  bool png_layers) {
  cfg.validate();
  if (!fs::exists(layout.velodyne_dir())) {
    throw IoError(layout.velodyne_dir().string() + ": no such directory");
  }
  const std::vector<int> available =
      indices_in_dir(layout.velodyne_dir(), ".bin");
  std::vector<int> wanted;
  if (begin < 0) {
    wanted = available;
  } else {
    if (end < begin) throw Error("sample range end before begin");
    const std::set<int> have(available.begin(), available.end());
    for (int i = begin; i <= end; ++i) {
      if (!have.count(i)) {
        throw MissingSample("no scan for sample " + sample_name(i) + " in " +
                            layout.velodyne_dir().string());
      }
      wanted.push_back(i);
    }
  }

  std::error_code ec;
  fs::create_directories(layout.bev_dir(), ec);
  if (ec) throw IoError(layout.bev_dir().string() + ": " + ec.message());

  const auto start = std::chrono::steady_clock::now();
  for (int idx : wanted) {
    const fs::path bin_path = layout.velodyne_path(idx);
    const VelodyneScan scan = with_path(bin_path, [&] {
      return read_velodyne_bin(read_binary_file(bin_path));
    });
    const BevStack stack = rasterize(scan.cloud, cfg);
    const StackDocument doc = export_stack(stack);
    write_binary_file(layout.bev_dir() / (sample_name(idx) + ".bin"),
                      doc.payload);
    write_text_file(layout.bev_dir() / (sample_name(idx) + ".txt"),
                    doc.sidecar);
    if (png_layers) {
      for (int layer = 0; layer < stack.layer_count(); ++layer) {
        write_png_gray(layout.bev_dir() / (sample_name(idx) + "_layer" +
                                           std::to_string(layer) + ".png"),
                       stack.cols, stack.rows, layer_to_gray(stack, layer));
      }
    }
  }
  const auto elapsed = std::chrono::duration<double>(
                           std::chrono::steady_clock::now() - start)
                           .count();
  RasterizeReport report;
  report.samples = static_cast<int>(wanted.size());
  report.seconds = elapsed;
  report.samples_per_second = elapsed > 0 ? report.samples / elapsed : 0.0;
  return report;
}

DatasetStats dataset_stats(const DatasetLayout& layout) {
  if (!fs::exists(layout.label_dir())) {
    throw IoError(layout.label_dir().string() + ": no such directory");
  }
  std::vector<std::vector<ObjectLabel>> per_sample;
  for (int idx : dataset_indices(layout)) {
    per_sample.push_back(with_path(layout.label_path(idx), [&] {
      return parse_label_file(read_text_file(layout.label_path(idx)));
    }));
  }
  return compute_stats(per_sample);
}

ValidationReport validate_dataset(const DatasetLayout& layout) {
  ValidationReport report;
  auto flag = [&](const fs::path& path, const std::string& message) {
    report.violations.push_back({path, message});
  };
  if (!fs::exists(layout.root)) {
    flag(layout.root, "dataset directory does not exist");
    return report;
  }
  const std::pair<fs::path, std::string> dirs[] = {
      {layout.label_dir(), ".txt"},
      {layout.calib_dir(), ".txt"},
      {layout.velodyne_dir(), ".bin"},
      {layout.plane_dir(), ".txt"},
      {layout.image_dir(), ".png"},
  };
  std::set<int> all_indices;
  for (const auto& [dir, ext] : dirs) {
    if (!fs::exists(dir)) {
      flag(dir, "required directory missing");
      continue;
    }
    for (int idx : indices_in_dir(dir, ext)) all_indices.insert(idx);
  }

  for (int idx : all_indices) {
    const fs::path files[] = {layout.label_path(idx), layout.calib_path(idx),
                              layout.velodyne_path(idx),
                              layout.plane_path(idx), layout.image_path(idx)};
    for (const fs::path& f : files) {
      if (!fs::exists(f)) flag(f, "missing for sample " + sample_name(idx));
    }

    if (fs::exists(layout.label_path(idx))) {
      try {
        const auto labels =
            parse_label_file(read_text_file(layout.label_path(idx)));
        for (std::size_t k = 0; k < labels.size(); ++k) {
          try {
            labels[k].validate();
          } catch (const InvalidLabel& e) {
            flag(layout.label_path(idx),
                 "label " + std::to_string(k + 1) + ": " + e.what());
          }
        }
      } catch (const Error& e) {
        flag(layout.label_path(idx), e.what());
      }
    }
    if (fs::exists(layout.calib_path(idx))) {
      try {
        parse_calib_file(read_text_file(layout.calib_path(idx))).validate();
      } catch (const Error& e) {
        flag(layout.calib_path(idx), e.what());
      }
    }
    if (fs::exists(layout.plane_path(idx))) {
      try {
        parse_plane_file(read_text_file(layout.plane_path(idx))).validate();
      } catch (const Error& e) {
        flag(layout.plane_path(idx), e.what());
      }
    }
    if (fs::exists(layout.velodyne_path(idx))) {
      std::error_code size_ec;
      const auto size = fs::file_size(layout.velodyne_path(idx), size_ec);
      if (size_ec) {
        flag(layout.velodyne_path(idx), size_ec.message());
      } else if (size % 16 != 0) {
        flag(layout.velodyne_path(idx),
             "scan length " + std::to_string(size) +
                 " is not a multiple of 16");
      }
    }
    if (fs::exists(layout.image_path(idx))) {
      static constexpr std::uint8_t magic[8] = {0x89, 'P',  'N',  'G',
                                                0x0d, 0x0a, 0x1a, 0x0a};
      std::ifstream in(layout.image_path(idx), std::ios::binary);
      std::uint8_t head[8] = {};
      in.read(reinterpret_cast<char*>(head), 8);
      if (!in || !std::equal(std::begin(magic), std::end(magic),
                             std::begin(head))) {
        flag(layout.image_path(idx), "not a png file");
      }
    }
  }
  return report;
}

std::string write_manifest(const ManifestInfo& info) {
  std::string out;
  out += "dataset_manifest 1\n";
  out += "seed " + std::to_string(info.seed) + "\n";
  out += "samples " + std::to_string(info.samples) + "\n";
  out += "reset_interval " + std::to_string(info.reset_interval) + "\n";
  for (const auto& [name, hex] : info.hashes) {
    out += "hash " + name + ' ' + hex + "\n";
  }
  out += "labeled_objects " + std::to_string(info.labeled_objects) + "\n";
  out += "oracle_comparisons " + std::to_string(info.oracle_comparisons) + "\n";
  out += "oracle_disagreements " + std::to_string(info.oracle_disagreements) +
         "\n";
  for (const auto& [name, count] : info.class_counts) {
    out += "class_count " + name + ' ' + std::to_string(count) + "\n";
  }
  // Columns: sample name, labeled objects, cars, pedestrians.
  for (const ManifestSample& s : info.per_sample) {
    out += "sample " + s.name + ' ' + std::to_string(s.labeled) + ' ' +
           std::to_string(s.cars) + ' ' + std::to_string(s.pedestrians) + "\n";
  }
  return out;
}

ManifestInfo parse_manifest(const std::string& text) {
  ManifestInfo info;
  bool seen_header = false;
  for (std::string_view line : detail::split_lines(text)) {
    const auto fields = detail::split_fields(line);
    if (fields.empty()) continue;
    const std::string_view key = fields[0];
    auto need = [&](std::size_t n) {
      if (fields.size() != n + 1) {
        throw MalformedLine(0, fields.size(),
                            "manifest key '" + std::string(key) + "' expects " +
                                std::to_string(n) + " values");
      }
    };
    if (key == "dataset_manifest") {
      need(1);
      seen_header = true;
    } else if (key == "seed") {
      need(1);
      info.seed = detail::parse_u64(fields[1], "manifest");
    } else if (key == "samples") {
      need(1);
      info.samples = static_cast<int>(detail::parse_int(fields[1], "manifest"));
    } else if (key == "reset_interval") {
      need(1);
      info.reset_interval =
          static_cast<int>(detail::parse_int(fields[1], "manifest"));
    } else if (key == "hash") {
      need(2);
      info.hashes[std::string(fields[1])] = std::string(fields[2]);
    } else if (key == "labeled_objects") {
      need(1);
      info.labeled_objects = detail::parse_int(fields[1], "manifest");
    } else if (key == "oracle_comparisons") {
      need(1);
      info.oracle_comparisons = detail::parse_int(fields[1], "manifest");
    } else if (key == "oracle_disagreements") {
      need(1);
      info.oracle_disagreements = detail::parse_int(fields[1], "manifest");
    } else if (key == "class_count") {
      need(2);
      info.class_counts[std::string(fields[1])] =
          detail::parse_int(fields[2], "manifest");
    } else if (key == "sample") {
      need(4);
      ManifestSample s;
      s.name = std::string(fields[1]);
      s.labeled = detail::parse_int(fields[2], "manifest");
      s.cars = detail::parse_int(fields[3], "manifest");
      s.pedestrians = detail::parse_int(fields[4], "manifest");
      info.per_sample.push_back(std::move(s));
    } else {
      throw ParseError("unknown manifest key: " + std::string(key));
    }
  }
  if (!seen_header) throw MissingKey("manifest header line missing");
  return info;
}

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string() + ": cannot open for reading");
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError(path.string() + ": read failed");
  return text;
}

void write_text_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path.string() + ": cannot open for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) throw IoError(path.string() + ": write failed");
}

std::vector<std::uint8_t> read_binary_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string() + ": cannot open for reading");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError(path.string() + ": read failed");
  return bytes;
}

void write_binary_file(const fs::path& path,
                       const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path.string() + ": cannot open for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) throw IoError(path.string() + ": write failed");
}

}  // namespace cadet
