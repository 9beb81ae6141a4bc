#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "cadet/geometry.hpp"
#include "cadet/image.hpp"
#include "cadet/kitti_io.hpp"
#include "cadet/occlusion.hpp"

namespace cadet {

enum class SceneClass { Car, Pedestrian, Fence, Wall };

const char* scene_class_name(SceneClass c);
SceneClass parse_scene_class(const std::string& name);

/// One oriented box in the scene. dimensions = (height, width, length);
/// the box's local x axis runs along length, y along width, z along height,
/// rotated by yaw about world z. porosity is the fraction of LIDAR rays a
/// perforated surface (chain fence) lets through; 0 means solid. Cars and
/// pedestrians are always solid.
struct SceneObject {
  SceneClass class_name = SceneClass::Car;
  Vec3 center = Vec3::Zero();      // SimWorld, geometric box center
  Vec3 dimensions = Vec3::Zero();  // (h, w, l) meters
  double yaw = 0;                  // radians about world z
  double porosity = 0;             // [0, 1]
  double hole_pitch = 0.3;         // period of the depth-render hole grid

  void validate() const;
};

/// Spinning LIDAR description. Angles in degrees, one ray per
/// (channel, azimuth step), elevations evenly spaced across the FOV.
struct LidarRig {
  int channels = 32;
  double vertical_fov_low = -30.0;
  double vertical_fov_high = 10.0;
  double horizontal_step = 0.18;
  double max_range = 70.0;
  double mount_height = 1.7;
  double range_noise_sigma = 0.0;  // optional Gaussian range noise, off by default

  void validate() const;
};

/// A static world snapshot: ground plane at z = 0 plus oriented boxes.
/// attitude describes the ego rotation R_yaw * R_roll * R_pitch
/// (vehicle-to-world); sensors ride on the tilted vehicle.
struct Scene {
  std::vector<SceneObject> objects;
  Attitude attitude;
  std::uint64_t rng_seed = 0;
};

/// Expected per-scene object counts. Car and pedestrian counts are Poisson
/// draws around the given means; fences and walls are fixed counts.
struct ClassMixture {
  double cars_per_scene = 1.4;
  double pedestrians_per_scene = 0.49;
  int fences = 0;
  int walls = 0;
};

struct SceneParams {
  ClassMixture mixture;
  std::array<double, 2> x_bounds{9.0, 36.0};  // spawn area, meters ahead
  std::array<double, 2> y_bounds{-8.0, 8.0};  // meters lateral
  double footprint_margin = 0.2;   // minimum gap between footprints
  int max_attempts = 100;          // placement rejections before giving up
  double car_clearance = 0.30;     // box bottom height above ground
  double pedestrian_clearance = 0.20;
  double attitude_jitter_deg = 2.0;  // ego pitch/roll range, uniform

  void validate() const;
};

/// Deterministically build a scene: draw counts, sizes, poses; positions are
/// uniform over the bounds with rejection on footprint overlap (axis-aligned,
/// margin-padded), yaw uniform in [-pi, pi). Throws PlacementFailure when an
/// object cannot be placed within max_attempts tries.
Scene generate_scene(const SceneParams& params, std::uint64_t seed);

/// Cast one ray per (channel, azimuth step) from the mounted sensor. Nearest
/// solid intersection within max_range yields a point; perforated objects
/// pass each ray with probability = porosity, decided by a hash of
/// (scene seed, ray index, object index) so the outcome is independent of
/// traversal schedule. The returned scan is sensor-anchored, attitude
/// corrected, and in the Velodyne frame; intensity is constant 0.5.
VelodyneScan raycast_lidar(const Scene& scene, const LidarRig& rig);

/// Camera pose used by the renderers: the transform from the gravity-aligned,
/// ego-yaw-aligned Velodyne-convention frame anchored at the ground below the
/// ego to CameraRect, with the camera riding at the LIDAR mount point.
RigidTransform default_camera_pose(double mount_height,
                                   const Attitude& attitude = {});

/// Render per-pixel z-depth (distance along the optical axis) of the nearest
/// solid surface through each pixel center. Perforated objects appear as a
/// regular hole grid whose open fraction equals the porosity. Sky pixels
/// carry the +infinity sentinel.
DepthMap render_depth(const Scene& scene, const CameraModel& cam,
                      const RigidTransform& pose);

/// Flat-shaded class-colored render sharing the depth pass; a stand-in for a
/// real camera image, sufficient for dataset plumbing.
Image render_image(const Scene& scene, const CameraModel& cam,
                   const RigidTransform& pose);

/// A labeling candidate: KITTI-style label, posed CameraRect corners, the
/// exact-ray visibility verdict used to score the depth-map heuristic, and
/// the index of the source object within the scene.
struct GroundTruthObject {
  ObjectLabel label;
  BoxVertices corners;
  bool truly_visible = false;
  int object_index = -1;
};

struct LabelOptions {
  double min_bbox_height = 25.0;  // pixels; shorter boxes are dropped
  double mount_height = 1.7;      // places the camera for projection
  double near_plane = 0.1;        // meters; boxes crossing it are dropped
};

/// Produce label candidates for every car and pedestrian: CameraRect corners,
/// clipped 2D box, truncation = 1 - clipped/full area, and truly_visible from
/// exact segment tests against all solid objects (camera center to each of
/// the 8 corners plus the box center; visible when fewer than 4 corner rays
/// are blocked or the center ray is clear). Objects fully outside the image,
/// crossing the near plane, or below min_bbox_height are omitted.
std::vector<GroundTruthObject> ground_truth_labels(const Scene& scene,
                                                   const CameraModel& cam,
                                                   const LabelOptions& opts = {});

/// The depth-map vertex test for one box, evaluated against the scene with
/// object exclude_index removed (-1 keeps everything). Equivalent to
/// object_occluded(render_depth(scene minus that object), corners, cam) but
/// traces only the pixels the test reads. Exclusion matters because these
/// boxes ARE their objects: against a full-scene map a box's rear corners
/// always hide behind its own front face, which is an artifact of the
/// box-world simplification rather than real occlusion.
OcclusionVerdict scene_occlusion_verdict(const Scene& scene,
                                         const CameraModel& cam,
                                         const RigidTransform& pose,
                                         const BoxVertices& corners,
                                         int exclude_index);

/// Scene + sensors bundled for serialization.
struct SceneDescription {
  Scene scene;
  LidarRig rig;
  CameraModel camera;
};

/// Lossless text form (full double precision) of a scene description.
std::string write_scene_file(const SceneDescription& desc);
SceneDescription parse_scene_file(const std::string& text);

}  // namespace cadet
