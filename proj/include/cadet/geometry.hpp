#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "cadet/errors.hpp"

namespace cadet {

using Vec3 = Eigen::Vector3d;
using Vec2 = Eigen::Vector2d;
using Mat3 = Eigen::Matrix3d;
using Mat34 = Eigen::Matrix<double, 3, 4>;

/// Coordinate frames used throughout the toolkit.
///
///  SimWorld    left-handed, x forward, y right, z up; fixed world origin.
///  SimVehicle  same axes as SimWorld, origin at the ego vehicle.
///  Velodyne    right-handed, x forward, y left, z up (KITTI LIDAR).
///  CameraRect  right-handed, x right, y down, z forward (KITTI rectified cam).
///  Image       pixels, origin top-left, u right, v down.
enum class Frame { SimWorld, SimVehicle, Velodyne, CameraRect, Image };

const char* frame_name(Frame frame);

/// A set of 3D points tagged with the frame they live in.
struct PointCloud {
  std::vector<Vec3> points;
  Frame frame = Frame::Velodyne;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
};

/// Proper rigid motion (rotation + translation) between two tagged frames.
/// The rotation must stay orthonormal with determinant +1; axis flips between
/// left- and right-handed frames are deliberately not representable here and
/// live in sim_to_velodyne() instead.
struct RigidTransform {
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();
  Frame from_frame = Frame::Velodyne;
  Frame to_frame = Frame::Velodyne;

  Vec3 apply(const Vec3& p) const { return rotation * p + translation; }

  /// True when the rotation block is orthonormal with determinant +1.
  bool is_valid(double tol = 1e-9) const;

  static RigidTransform identity(Frame frame);
};

/// a.inverse maps to_frame back to from_frame.
RigidTransform inverse(const RigidTransform& t);

/// compose(a, b) applies b first, then a; throws FrameMismatch unless
/// b.to_frame == a.from_frame.
RigidTransform compose(const RigidTransform& a, const RigidTransform& b);

/// Pinhole camera with zero skew operating on CameraRect points.
struct CameraModel {
  double fx = 0;
  double fy = 0;
  double cx = 0;
  double cy = 0;
  int width = 0;
  int height = 0;

  /// 3x4 projection matrix [[fx,0,cx,0],[0,fy,cy,0],[0,0,1,0]].
  Mat34 projection_matrix() const;

  static CameraModel pinhole(double fx, double fy, double cx, double cy,
                             int width, int height);
};

/// Ego attitude in radians. pitch rotates about the vehicle y axis (nose
/// up/down), roll about the x axis, yaw about the z axis. Each angle is
/// expected in [-pi, pi].
struct Attitude {
  double pitch = 0;
  double roll = 0;
  double yaw = 0;
};

/// A projected point: pixel position plus camera-frame depth (z).
struct Projection {
  double u = 0;
  double v = 0;
  double depth = 0;
};

/// Map a SimWorld/SimVehicle point onto Velodyne axes by negating y.
/// This is an axis flip (determinant -1), not a rigid motion.
Vec3 sim_to_velodyne(const Vec3& p);

/// Axis permutation from Velodyne to CameraRect: (x,y,z) -> (-y,-z,x).
/// A proper rotation; returned with zero translation.
RigidTransform velodyne_to_camera_transform();

/// Apply a Velodyne->CameraRect rig transform to one point.
/// Throws FrameMismatch when the transform is tagged with other frames.
Vec3 velodyne_to_camera(const Vec3& p, const RigidTransform& rig);

/// Project a CameraRect point through the pinhole model. Returns nullopt
/// for points with depth below the near cutoff, including points behind
/// the camera. Pixels outside the image bounds are still returned; callers
/// that care about the field of view must check against width/height.
std::optional<Projection> try_project(const Vec3& p, const CameraModel& cam,
                                      double near = 1e-6);

/// As try_project, but throws BehindCamera instead of returning nullopt.
Projection project(const Vec3& p, const CameraModel& cam, double near = 1e-6);

/// Rotation applied by correct_attitude: R = R_roll(roll) * R_pitch(pitch),
/// pitch acting first, yaw untouched. R_pitch rotates about +y so that a
/// pitch of pi/2 maps (1,0,0) to (0,0,1); R_roll rotates about +x with the
/// matching sign convention.
Mat3 attitude_correction(const Attitude& att);

/// Rotate a SimVehicle cloud so its z axis realigns with gravity, removing
/// the ego pitch and roll. Yaw is deliberately preserved. Throws
/// FrameMismatch for clouds tagged with any other frame.
PointCloud correct_attitude(const PointCloud& cloud, const Attitude& att);

/// Wrap an angle to [-pi, pi).
double wrap_to_pi(double angle);

}  // namespace cadet
