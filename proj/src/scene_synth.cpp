#include "cadet/scene_synth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "cadet/random.hpp"
#include "internal_util.hpp"

namespace cadet {
namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kInf = std::numeric_limits<double>::infinity();

Mat3 yaw_rotation(double yaw) {
  const double c = std::cos(yaw);
  const double s = std::sin(yaw);
  Mat3 r;
  r << c, -s, 0,  //
      s, c, 0,    //
      0, 0, 1;
  return r;
}

// Cached oriented-box geometry for ray tests. Local axes: x along length,
// y along width, z along height, so half = (l, w, h) / 2 reorders the
// (h, w, l) dimension convention.
struct Obb {
  Mat3 rot;  // local -> world
  Vec3 center;
  Vec3 half;
  double porosity = 0;
  double hole_pitch = 0.3;
  double wire = 0;  // solid strip width of the perforation grid
  SceneClass cls = SceneClass::Car;
};

std::vector<Obb> build_obbs(const Scene& scene) {
  std::vector<Obb> obbs;
  obbs.reserve(scene.objects.size());
  for (const SceneObject& obj : scene.objects) {
    obj.validate();
    Obb o;
    o.rot = yaw_rotation(obj.yaw);
    o.center = obj.center;
    o.half = Vec3(obj.dimensions.z(), obj.dimensions.y(), obj.dimensions.x()) / 2.0;
    o.porosity = obj.porosity;
    o.hole_pitch = obj.hole_pitch;
    o.wire = obj.hole_pitch * (1.0 - std::sqrt(obj.porosity));
    o.cls = obj.class_name;
    obbs.push_back(o);
  }
  return obbs;
}

struct RayHit {
  double t = 0;
  Vec3 local = Vec3::Zero();  // entry point in box-local coordinates
};

// Slab test; dir need not be unit length (t stays in caller units).
std::optional<RayHit> ray_obb(const Obb& o, const Vec3& origin, const Vec3& dir,
                              double t_min, double t_max) {
  const Vec3 lo = o.rot.transpose() * (origin - o.center);
  const Vec3 ld = o.rot.transpose() * dir;
  double t0 = t_min;
  double t1 = t_max;
  for (int axis = 0; axis < 3; ++axis) {
    const double d = ld[axis];
    const double p = lo[axis];
    const double h = o.half[axis];
    if (std::abs(d) < 1e-12) {
      if (p < -h || p > h) return std::nullopt;
      continue;
    }
    double ta = (-h - p) / d;
    double tb = (h - p) / d;
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
    if (t0 > t1) return std::nullopt;
  }
  return RayHit{t0, lo + t0 * ld};
}

// Deterministic perforation: a square grid of holes in the length/height
// plane. Solid fraction per axis is wire/pitch, so the open (hole) fraction
// is (1 - wire/pitch)^2 = porosity.
bool porous_solid_at(const Obb& o, const Vec3& local) {
  const double u = std::max(0.0, local.x() + o.half.x());
  const double w = std::max(0.0, local.z() + o.half.z());
  return std::fmod(u, o.hole_pitch) < o.wire ||
         std::fmod(w, o.hole_pitch) < o.wire;
}

struct TraceResult {
  double t = kInf;
  int object = -1;  // index into the scene, -2 for ground, -1 for no hit
};

// Nearest surface as a camera sees it: perforated boxes are solid only where
// the hole grid is solid (thin-sheet assumption: a ray entering a hole skips
// the box entirely).
TraceResult trace_camera_ray(const std::vector<Obb>& obbs, const Vec3& origin,
                             const Vec3& dir, double t_min, double t_max) {
  TraceResult res;
  res.t = t_max;
  if (dir.z() < 0 && origin.z() > 0) {
    const double tg = -origin.z() / dir.z();
    if (tg <= res.t) {
      res.t = tg;
      res.object = -2;
    }
  }
  for (std::size_t i = 0; i < obbs.size(); ++i) {
    const auto hit = ray_obb(obbs[i], origin, dir, t_min, res.t);
    if (!hit) continue;
    if (obbs[i].porosity > 0 && !porous_solid_at(obbs[i], hit->local)) continue;
    res.t = hit->t;
    res.object = static_cast<int>(i);
  }
  return res;
}

// Nearest surface as the LIDAR sees it: each (ray, perforated object) pair
// passes through with probability = porosity, decided by a stateless hash so
// the outcome cannot depend on traversal order.
TraceResult trace_lidar_ray(const std::vector<Obb>& obbs, const Vec3& origin,
                            const Vec3& dir, double max_range,
                            std::uint64_t seed, std::uint64_t ray_index) {
  TraceResult res;
  res.t = max_range;
  if (dir.z() < 0 && origin.z() > 0) {
    const double tg = -origin.z() / dir.z();
    if (tg <= res.t) {
      res.t = tg;
      res.object = -2;
    }
  }
  for (std::size_t i = 0; i < obbs.size(); ++i) {
    const auto hit = ray_obb(obbs[i], origin, dir, 1e-6, res.t);
    if (!hit) continue;
    if (obbs[i].porosity > 0 &&
        hash_uniform(seed, ray_index, i + 1) < obbs[i].porosity) {
      continue;
    }
    res.t = hit->t;
    res.object = static_cast<int>(i);
  }
  return res;
}

Vec3 corner_offset(const Vec3& half, int index) {
  return Vec3((index & 1) ? half.x() : -half.x(),
              (index & 2) ? half.y() : -half.y(),
              (index & 4) ? half.z() : -half.z());
}

}  // namespace

const char* scene_class_name(SceneClass c) {
  switch (c) {
    case SceneClass::Car:
      return "Car";
    case SceneClass::Pedestrian:
      return "Pedestrian";
    case SceneClass::Fence:
      return "Fence";
    case SceneClass::Wall:
      return "Wall";
  }
  return "?";
}

SceneClass parse_scene_class(const std::string& name) {
  if (name == "Car") return SceneClass::Car;
  if (name == "Pedestrian") return SceneClass::Pedestrian;
  if (name == "Fence") return SceneClass::Fence;
  if (name == "Wall") return SceneClass::Wall;
  throw ParseError("unknown scene class: " + name);
}

void SceneObject::validate() const {
  if (!(dimensions.x() > 0) || !(dimensions.y() > 0) ||
      !(dimensions.z() > 0)) {
    throw Error("scene object dimensions must be positive");
  }
  if (!(porosity >= 0.0 && porosity <= 1.0)) {
    throw Error("porosity outside [0, 1]: " + std::to_string(porosity));
  }
  if ((class_name == SceneClass::Car || class_name == SceneClass::Pedestrian) &&
      porosity != 0.0) {
    throw Error("cars and pedestrians must be solid");
  }
  if (!(hole_pitch > 0)) throw Error("hole_pitch must be positive");
}

void LidarRig::validate() const {
  if (channels < 1) throw Error("rig needs at least one channel");
  if (!(max_range > 0)) throw Error("max_range must be positive");
  if (!(horizontal_step > 0)) throw Error("horizontal_step must be positive");
  if (vertical_fov_high < vertical_fov_low) {
    throw Error("vertical FOV high bound below low bound");
  }
  if (!(mount_height > 0)) throw Error("mount_height must be positive");
  if (range_noise_sigma < 0) throw Error("range noise sigma must be >= 0");
}

void SceneParams::validate() const {
  if (!(x_bounds[1] > x_bounds[0]) || !(y_bounds[1] > y_bounds[0])) {
    throw Error("spawn bounds must be non-empty");
  }
  if (mixture.cars_per_scene < 0 || mixture.pedestrians_per_scene < 0 ||
      mixture.fences < 0 || mixture.walls < 0) {
    throw Error("mixture counts must be non-negative");
  }
  if (footprint_margin < 0) throw Error("footprint_margin must be >= 0");
  if (max_attempts < 1) throw Error("max_attempts must be >= 1");
  if (car_clearance < 0 || pedestrian_clearance < 0) {
    throw Error("clearances must be >= 0");
  }
  if (attitude_jitter_deg < 0) throw Error("attitude jitter must be >= 0");
}

Scene generate_scene(const SceneParams& params, std::uint64_t seed) {
  params.validate();
  Rng rng(seed);
  Scene scene;
  scene.rng_seed = seed;

  const double jitter = params.attitude_jitter_deg * kDegToRad;
  scene.attitude.pitch = rng.uniform(-jitter, jitter);
  scene.attitude.roll = rng.uniform(-jitter, jitter);
  scene.attitude.yaw = 0.0;

  const int n_cars = rng.poisson(params.mixture.cars_per_scene);
  const int n_pedestrians = rng.poisson(params.mixture.pedestrians_per_scene);

  struct Footprint {
    double cx, cy, ex, ey;
  };
  std::vector<Footprint> placed;

  auto place = [&](SceneClass cls) {
    SceneObject obj;
    obj.class_name = cls;
    double clearance = 0;
    switch (cls) {
      case SceneClass::Car:
        obj.dimensions = Vec3(rng.uniform(1.4, 1.7), rng.uniform(1.6, 1.9),
                              rng.uniform(3.9, 4.6));
        clearance = params.car_clearance;
        break;
      case SceneClass::Pedestrian:
        obj.dimensions = Vec3(rng.uniform(1.6, 1.9), rng.uniform(0.4, 0.7),
                              rng.uniform(0.4, 0.7));
        clearance = params.pedestrian_clearance;
        break;
      case SceneClass::Fence:
        obj.dimensions =
            Vec3(rng.uniform(1.8, 2.2), 0.05, rng.uniform(6.0, 10.0));
        obj.porosity = 0.7;
        break;
      case SceneClass::Wall:
        obj.dimensions = Vec3(rng.uniform(1.0, 2.2), rng.uniform(0.2, 0.4),
                              rng.uniform(3.0, 6.0));
        break;
    }
    const double h = obj.dimensions.x();
    const double w = obj.dimensions.y();
    const double l = obj.dimensions.z();
    for (int attempt = 0; attempt < params.max_attempts; ++attempt) {
      const double x = rng.uniform(params.x_bounds[0], params.x_bounds[1]);
      const double y = rng.uniform(params.y_bounds[0], params.y_bounds[1]);
      const double yaw = rng.uniform(-std::numbers::pi, std::numbers::pi);
      const double ac = std::abs(std::cos(yaw));
      const double as = std::abs(std::sin(yaw));
      Footprint fp;
      fp.cx = x;
      fp.cy = y;
      fp.ex = (ac * l + as * w) / 2.0 + params.footprint_margin / 2.0;
      fp.ey = (as * l + ac * w) / 2.0 + params.footprint_margin / 2.0;
      bool overlaps = false;
      for (const Footprint& other : placed) {
        if (std::abs(fp.cx - other.cx) < fp.ex + other.ex &&
            std::abs(fp.cy - other.cy) < fp.ey + other.ey) {
          overlaps = true;
          break;
        }
      }
      if (overlaps) continue;
      obj.center = Vec3(x, y, clearance + h / 2.0);
      obj.yaw = yaw;
      placed.push_back(fp);
      scene.objects.push_back(obj);
      return;
    }
    throw PlacementFailure(std::string("could not place a ") +
                           scene_class_name(cls) + " after " +
                           std::to_string(params.max_attempts) + " attempts");
  };

  for (int i = 0; i < params.mixture.walls; ++i) place(SceneClass::Wall);
  for (int i = 0; i < params.mixture.fences; ++i) place(SceneClass::Fence);
  for (int i = 0; i < n_cars; ++i) place(SceneClass::Car);
  for (int i = 0; i < n_pedestrians; ++i) place(SceneClass::Pedestrian);
  return scene;
}

VelodyneScan raycast_lidar(const Scene& scene, const LidarRig& rig) {
  rig.validate();
  const std::vector<Obb> obbs = build_obbs(scene);

  const Mat3 correction = attitude_correction(scene.attitude);
  const Mat3 vehicle_to_world = yaw_rotation(scene.attitude.yaw) * correction;
  const Vec3 sensor_world = vehicle_to_world * Vec3(0, 0, rig.mount_height);

  const int az_count =
      static_cast<int>(std::floor(360.0 / rig.horizontal_step + 1e-9));
  PointCloud vehicle_cloud;
  vehicle_cloud.frame = Frame::SimVehicle;

  Rng noise(derive_seed(scene.rng_seed, 0x6e015e));
  for (int ch = 0; ch < rig.channels; ++ch) {
    const double elevation_deg =
        rig.channels == 1
            ? (rig.vertical_fov_low + rig.vertical_fov_high) / 2.0
            : rig.vertical_fov_low + ch * (rig.vertical_fov_high -
                                           rig.vertical_fov_low) /
                                         (rig.channels - 1);
    const double elev = elevation_deg * kDegToRad;
    const double ce = std::cos(elev);
    const double se = std::sin(elev);
    for (int k = 0; k < az_count; ++k) {
      const double az = k * rig.horizontal_step * kDegToRad;
      const Vec3 dir_vehicle(ce * std::cos(az), ce * std::sin(az), se);
      const Vec3 dir_world = vehicle_to_world * dir_vehicle;
      const std::uint64_t ray_index =
          static_cast<std::uint64_t>(ch) * az_count + k;
      const TraceResult res = trace_lidar_ray(obbs, sensor_world, dir_world,
                                              rig.max_range, scene.rng_seed,
                                              ray_index);
      if (res.object == -1) continue;
      double t = res.t;
      if (rig.range_noise_sigma > 0) {
        t = std::max(0.0, t + noise.normal(0.0, rig.range_noise_sigma));
      }
      // Sensor-anchored vehicle-frame coordinates collapse to t * direction.
      vehicle_cloud.points.push_back(t * dir_vehicle);
    }
  }

  const PointCloud corrected = correct_attitude(vehicle_cloud, scene.attitude);
  VelodyneScan scan;
  scan.cloud.frame = Frame::Velodyne;
  scan.cloud.points.reserve(corrected.size());
  scan.intensity.assign(corrected.size(), 0.5f);
  for (const Vec3& p : corrected.points) {
    scan.cloud.points.push_back(sim_to_velodyne(p));
  }
  return scan;
}

RigidTransform default_camera_pose(double mount_height,
                                   const Attitude& attitude) {
  RigidTransform pose = velodyne_to_camera_transform();
  const Vec3 cam_in_ground_velo = sim_to_velodyne(
      attitude_correction(attitude) * Vec3(0, 0, mount_height));
  pose.translation = -(pose.rotation * cam_in_ground_velo);
  return pose;
}

namespace {

// Shared camera-ray setup: recover the camera's world position and the
// rotation taking camera directions to world directions. The pose maps the
// ground-anchored, gravity/yaw-aligned Velodyne-style frame to CameraRect.
struct CameraRig {
  Vec3 origin_world;
  Mat3 cam_to_ground;  // CameraRect axes -> ground-velodyne axes
  Mat3 yaw;
};

CameraRig make_camera_rig(const RigidTransform& pose, const Attitude& att) {
  if (pose.from_frame != Frame::Velodyne ||
      pose.to_frame != Frame::CameraRect) {
    throw FrameMismatch(std::string("camera pose must map Velodyne to "
                                    "CameraRect, got ") +
                        frame_name(pose.from_frame) + " to " +
                        frame_name(pose.to_frame));
  }
  CameraRig rig;
  rig.yaw = yaw_rotation(att.yaw);
  rig.cam_to_ground = pose.rotation.transpose();
  const Vec3 cam_in_ground = -(pose.rotation.transpose() * pose.translation);
  rig.origin_world = rig.yaw * sim_to_velodyne(cam_in_ground);
  return rig;
}

Vec3 camera_dir_to_world(const CameraRig& rig, const Vec3& dir_cam) {
  return rig.yaw * sim_to_velodyne(rig.cam_to_ground * dir_cam);
}

}  // namespace

DepthMap render_depth(const Scene& scene, const CameraModel& cam,
                      const RigidTransform& pose) {
  const std::vector<Obb> obbs = build_obbs(scene);
  const CameraRig rig = make_camera_rig(pose, scene.attitude);
  DepthMap dm = DepthMap::constant(cam.width, cam.height, DepthMap::kSky);
  for (int v = 0; v < cam.height; ++v) {
    for (int u = 0; u < cam.width; ++u) {
      // Pixel-center ray with unit z, so the hit parameter is the z-depth.
      const Vec3 dir_cam((u + 0.5 - cam.cx) / cam.fx,
                         (v + 0.5 - cam.cy) / cam.fy, 1.0);
      const Vec3 dir_world = camera_dir_to_world(rig, dir_cam);
      const TraceResult res =
          trace_camera_ray(obbs, rig.origin_world, dir_world, 1e-6, kInf);
      if (res.object != -1) dm.at(u, v) = static_cast<float>(res.t);
    }
  }
  return dm;
}

Image render_image(const Scene& scene, const CameraModel& cam,
                   const RigidTransform& pose) {
  const std::vector<Obb> obbs = build_obbs(scene);
  const CameraRig rig = make_camera_rig(pose, scene.attitude);
  Image img = Image::filled(cam.width, cam.height, 178, 196, 224);  // sky
  for (int v = 0; v < cam.height; ++v) {
    for (int u = 0; u < cam.width; ++u) {
      const Vec3 dir_cam((u + 0.5 - cam.cx) / cam.fx,
                         (v + 0.5 - cam.cy) / cam.fy, 1.0);
      const Vec3 dir_world = camera_dir_to_world(rig, dir_cam);
      const TraceResult res =
          trace_camera_ray(obbs, rig.origin_world, dir_world, 1e-6, kInf);
      if (res.object == -1) continue;
      int r = 84, g = 84, b = 88;  // ground
      if (res.object >= 0) {
        switch (obbs[res.object].cls) {
          case SceneClass::Car: r = 66; g = 133; b = 244; break;
          case SceneClass::Pedestrian: r = 219; g = 68; b = 55; break;
          case SceneClass::Fence: r = 158; g = 158; b = 158; break;
          case SceneClass::Wall: r = 121; g = 85; b = 72; break;
        }
      }
      // Distance shading for a minimal depth cue.
      const double shade = 0.55 + 0.45 / (1.0 + 0.03 * res.t);
      img.set(u, v,
              static_cast<std::uint8_t>(std::lround(r * shade)),
              static_cast<std::uint8_t>(std::lround(g * shade)),
              static_cast<std::uint8_t>(std::lround(b * shade)));
    }
  }
  return img;
}

std::vector<GroundTruthObject> ground_truth_labels(const Scene& scene,
                                                   const CameraModel& cam,
                                                   const LabelOptions& opts) {
  const std::vector<Obb> obbs = build_obbs(scene);
  const RigidTransform pose =
      default_camera_pose(opts.mount_height, scene.attitude);
  const CameraRig rig = make_camera_rig(pose, scene.attitude);
  const Mat3 yaw_inv = rig.yaw.transpose();

  auto world_to_cam = [&](const Vec3& p) {
    return pose.apply(sim_to_velodyne(yaw_inv * p));
  };

  // A corner segment is blocked when any other solid box cuts it strictly
  // between camera and corner. Perforated objects never block the oracle;
  // the ground cannot (both endpoints sit above it).
  auto blocked = [&](const Vec3& target, std::size_t self) {
    const Vec3 d = target - rig.origin_world;
    for (std::size_t j = 0; j < obbs.size(); ++j) {
      if (j == self || obbs[j].porosity > 0) continue;
      if (ray_obb(obbs[j], rig.origin_world, d, 1e-9, 1.0 - 1e-9)) return true;
    }
    return false;
  };

  std::vector<GroundTruthObject> out;
  for (std::size_t i = 0; i < scene.objects.size(); ++i) {
    const SceneObject& obj = scene.objects[i];
    if (obj.class_name != SceneClass::Car &&
        obj.class_name != SceneClass::Pedestrian) {
      continue;
    }
    const Obb& geom = obbs[i];

    BoxVertices corners_cam;
    std::array<Vec3, 8> corners_world;
    bool behind = false;
    for (int c = 0; c < 8; ++c) {
      corners_world[c] = geom.center + geom.rot * corner_offset(geom.half, c);
      corners_cam[c] = world_to_cam(corners_world[c]);
      if (corners_cam[c].z() < opts.near_plane) behind = true;
    }
    if (behind) continue;

    double u_min = kInf, u_max = -kInf, v_min = kInf, v_max = -kInf;
    for (const Vec3& p : corners_cam) {
      const double u = cam.fx * p.x() / p.z() + cam.cx;
      const double v = cam.fy * p.y() / p.z() + cam.cy;
      u_min = std::min(u_min, u);
      u_max = std::max(u_max, u);
      v_min = std::min(v_min, v);
      v_max = std::max(v_max, v);
    }
    const double cu_min = std::max(u_min, 0.0);
    const double cu_max = std::min(u_max, static_cast<double>(cam.width));
    const double cv_min = std::max(v_min, 0.0);
    const double cv_max = std::min(v_max, static_cast<double>(cam.height));
    if (!(cu_max > cu_min) || !(cv_max > cv_min)) continue;  // fully outside
    if (cv_max - cv_min < opts.min_bbox_height) continue;

    const double full_area = (u_max - u_min) * (v_max - v_min);
    const double clip_area = (cu_max - cu_min) * (cv_max - cv_min);

    ObjectLabel label;
    label.class_name = scene_class_name(obj.class_name);
    label.truncation = std::clamp(1.0 - clip_area / full_area, 0.0, 1.0);
    label.occlusion_flag = 0;
    label.left = cu_min;
    label.top = cv_min;
    label.right = cu_max;
    label.bottom = cv_max;
    label.height = obj.dimensions.x();
    label.width = obj.dimensions.y();
    label.length = obj.dimensions.z();
    label.location =
        world_to_cam(obj.center - Vec3(0, 0, obj.dimensions.x() / 2.0));
    label.rotation_y = wrap_to_pi(obj.yaw - scene.attitude.yaw -
                                  std::numbers::pi / 2.0);
    label.alpha = compute_alpha(label.location, label.rotation_y);
    label.validate();

    int blocked_corners = 0;
    for (const Vec3& cw : corners_world) {
      if (blocked(cw, i)) ++blocked_corners;
    }
    const bool center_blocked = blocked(geom.center, i);

    GroundTruthObject gt;
    gt.label = std::move(label);
    gt.corners = corners_cam;
    gt.truly_visible = blocked_corners < 4 || !center_blocked;
    gt.object_index = static_cast<int>(i);
    out.push_back(std::move(gt));
  }
  return out;
}

OcclusionVerdict scene_occlusion_verdict(const Scene& scene,
                                         const CameraModel& cam,
                                         const RigidTransform& pose,
                                         const BoxVertices& corners,
                                         int exclude_index) {
  std::vector<Obb> obbs = build_obbs(scene);
  if (exclude_index >= 0 && exclude_index < static_cast<int>(obbs.size())) {
    obbs.erase(obbs.begin() + exclude_index);
  }
  const CameraRig rig = make_camera_rig(pose, scene.attitude);
  // Float cast matches what render_depth would have stored, keeping this
  // path bit-identical to testing against a rendered map.
  auto depth_at = [&](int u, int v) {
    const Vec3 dir_cam((u + 0.5 - cam.cx) / cam.fx,
                       (v + 0.5 - cam.cy) / cam.fy, 1.0);
    const Vec3 dir_world = camera_dir_to_world(rig, dir_cam);
    const TraceResult res =
        trace_camera_ray(obbs, rig.origin_world, dir_world, 1e-6, kInf);
    return res.object == -1 ? DepthMap::kSky : static_cast<float>(res.t);
  };
  return object_occluded_sampled(depth_at, cam.width, cam.height, corners, cam);
}

std::string write_scene_file(const SceneDescription& desc) {
  using detail::format_exact;
  std::string out;
  out += "scene_seed " + std::to_string(desc.scene.rng_seed) + "\n";
  out += "attitude " + format_exact(desc.scene.attitude.pitch) + ' ' +
         format_exact(desc.scene.attitude.roll) + ' ' +
         format_exact(desc.scene.attitude.yaw) + "\n";
  out += "camera " + format_exact(desc.camera.fx) + ' ' +
         format_exact(desc.camera.fy) + ' ' + format_exact(desc.camera.cx) +
         ' ' + format_exact(desc.camera.cy) + ' ' +
         std::to_string(desc.camera.width) + ' ' +
         std::to_string(desc.camera.height) + "\n";
  out += "rig " + std::to_string(desc.rig.channels) + ' ' +
         format_exact(desc.rig.vertical_fov_low) + ' ' +
         format_exact(desc.rig.vertical_fov_high) + ' ' +
         format_exact(desc.rig.horizontal_step) + ' ' +
         format_exact(desc.rig.max_range) + ' ' +
         format_exact(desc.rig.mount_height) + ' ' +
         format_exact(desc.rig.range_noise_sigma) + "\n";
  for (const SceneObject& obj : desc.scene.objects) {
    out += std::string("object ") + scene_class_name(obj.class_name) + ' ' +
           format_exact(obj.center.x()) + ' ' + format_exact(obj.center.y()) +
           ' ' + format_exact(obj.center.z()) + ' ' +
           format_exact(obj.dimensions.x()) + ' ' +
           format_exact(obj.dimensions.y()) + ' ' +
           format_exact(obj.dimensions.z()) + ' ' + format_exact(obj.yaw) +
           ' ' + format_exact(obj.porosity) + ' ' +
           format_exact(obj.hole_pitch) + "\n";
  }
  return out;
}

SceneDescription parse_scene_file(const std::string& text) {
  SceneDescription desc;
  bool seen_seed = false, seen_attitude = false, seen_camera = false,
       seen_rig = false;
  for (std::string_view line : detail::split_lines(text)) {
    const auto fields = detail::split_fields(line);
    if (fields.empty() || fields[0][0] == '#') continue;
    const std::string_view key = fields[0];
    auto need = [&](std::size_t n) {
      if (fields.size() != n + 1) {
        throw MalformedLine(0, fields.size(),
                            "scene key '" + std::string(key) + "' expects " +
                                std::to_string(n) + " values");
      }
    };
    if (key == "scene_seed") {
      need(1);
      desc.scene.rng_seed = detail::parse_u64(fields[1], "scene");
      seen_seed = true;
    } else if (key == "attitude") {
      need(3);
      desc.scene.attitude.pitch = detail::parse_double(fields[1], "scene");
      desc.scene.attitude.roll = detail::parse_double(fields[2], "scene");
      desc.scene.attitude.yaw = detail::parse_double(fields[3], "scene");
      seen_attitude = true;
    } else if (key == "camera") {
      need(6);
      desc.camera.fx = detail::parse_double(fields[1], "scene");
      desc.camera.fy = detail::parse_double(fields[2], "scene");
      desc.camera.cx = detail::parse_double(fields[3], "scene");
      desc.camera.cy = detail::parse_double(fields[4], "scene");
      desc.camera.width = static_cast<int>(detail::parse_int(fields[5], "scene"));
      desc.camera.height =
          static_cast<int>(detail::parse_int(fields[6], "scene"));
      seen_camera = true;
    } else if (key == "rig") {
      need(7);
      desc.rig.channels = static_cast<int>(detail::parse_int(fields[1], "scene"));
      desc.rig.vertical_fov_low = detail::parse_double(fields[2], "scene");
      desc.rig.vertical_fov_high = detail::parse_double(fields[3], "scene");
      desc.rig.horizontal_step = detail::parse_double(fields[4], "scene");
      desc.rig.max_range = detail::parse_double(fields[5], "scene");
      desc.rig.mount_height = detail::parse_double(fields[6], "scene");
      desc.rig.range_noise_sigma = detail::parse_double(fields[7], "scene");
      seen_rig = true;
    } else if (key == "object") {
      need(10);
      SceneObject obj;
      obj.class_name = parse_scene_class(std::string(fields[1]));
      obj.center = Vec3(detail::parse_double(fields[2], "scene"),
                        detail::parse_double(fields[3], "scene"),
                        detail::parse_double(fields[4], "scene"));
      obj.dimensions = Vec3(detail::parse_double(fields[5], "scene"),
                            detail::parse_double(fields[6], "scene"),
                            detail::parse_double(fields[7], "scene"));
      obj.yaw = detail::parse_double(fields[8], "scene");
      obj.porosity = detail::parse_double(fields[9], "scene");
      obj.hole_pitch = detail::parse_double(fields[10], "scene");
      desc.scene.objects.push_back(obj);
    } else {
      throw ParseError("unknown scene file key: " + std::string(key));
    }
  }
  if (!seen_seed || !seen_attitude || !seen_camera || !seen_rig) {
    throw MissingKey("scene file needs scene_seed, attitude, camera, rig");
  }
  return desc;
}

}  // namespace cadet
