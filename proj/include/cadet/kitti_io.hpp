#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cadet/geometry.hpp"

namespace cadet {

/// One object annotation in KITTI label_2 layout. Angles are radians,
/// distances meters, pixel coordinates image space. location is the bottom
/// face center of the 3D box in CameraRect coordinates.
struct ObjectLabel {
  std::string class_name = "DontCare";
  double truncation = 0;   // [0, 1], fraction of the 2D box outside the image
  int occlusion_flag = 0;  // 0 visible, 1 partly, 2 largely occluded, 3 unknown
  double alpha = 0;        // observation angle, [-pi, pi]
  double left = 0, top = 0, right = 0, bottom = 0;  // 2D box, pixels
  double height = 0, width = 0, length = 0;         // 3D box, meters
  Vec3 location = Vec3::Zero();                     // CameraRect
  double rotation_y = 0;                            // yaw about camera y
  std::optional<double> score;  // detection confidence, absent in ground truth

  bool is_dont_care() const { return class_name == "DontCare"; }

  /// Throws InvalidLabel when a field is outside its documented range.
  void validate() const;
};

/// Camera/LIDAR calibration block in KITTI object-devkit layout. All four
/// projection matrices are populated; this toolkit models a single rectified
/// camera, so P0..P3 are identical and R0_rect is the identity.
struct CalibrationSet {
  Mat34 p0 = Mat34::Zero();
  Mat34 p1 = Mat34::Zero();
  Mat34 p2 = Mat34::Zero();
  Mat34 p3 = Mat34::Zero();
  Mat3 r0_rect = Mat3::Identity();
  Mat34 tr_velo_to_cam = Mat34::Zero();
  Mat34 tr_imu_to_velo = Mat34::Zero();

  /// Assemble the block for one pinhole camera and one LIDAR rig pose.
  static CalibrationSet for_camera(const CameraModel& cam,
                                   const RigidTransform& velo_to_cam);

  /// Throws InvalidCalibration when the rotation blocks are not orthonormal
  /// or the projections disagree with each other.
  void validate() const;
};

/// Ground plane in CameraRect coordinates: normal.dot(p) + d = 0. The normal
/// is unit length and points up, which in camera axes means normal.y < 0.
struct GroundPlane {
  Vec3 normal = Vec3(0, -1, 0);
  double d = 0;

  /// Signed height of the camera origin above the plane.
  double camera_height() const { return d; }

  /// Throws InvalidPlane for non-unit or downward-pointing normals.
  void validate() const;
};

/// A LIDAR sweep: Velodyne-frame points plus one intensity per point.
struct VelodyneScan {
  PointCloud cloud{{}, Frame::Velodyne};
  std::vector<float> intensity;

  std::size_t size() const { return cloud.size(); }
};

/// Serialize labels, one line per object, 15 whitespace-separated fields
/// (16 with score). Floats use two decimals. Validates every label first.
std::string write_label_file(const std::vector<ObjectLabel>& labels);

/// Parse a label file. Lines must have 15 or 16 fields; anything else raises
/// MalformedLine, non-numeric payloads raise NonNumericField.
std::vector<ObjectLabel> parse_label_file(const std::string& text);

/// Serialize a calibration block as "KEY: v0 v1 ..." lines with 12
/// significant digits, enough for exact-to-1e-10 round trips.
std::string write_calib_file(const CalibrationSet& calib);

/// Parse a calibration file. Missing keys raise MissingKey, element-count or
/// numeric problems raise MalformedMatrix.
CalibrationSet parse_calib_file(const std::string& text);

/// Pack a scan as little-endian float32 (x, y, z, intensity) records.
std::vector<std::uint8_t> write_velodyne_bin(const VelodyneScan& scan);

/// Unpack a packed scan; sizes not divisible by 16 raise TruncatedFile.
VelodyneScan read_velodyne_bin(const std::vector<std::uint8_t>& bytes);

/// Serialize a ground plane in the planes/ sidecar layout ("# Plane" header,
/// then the four coefficients). Validates the plane first.
std::string write_plane_file(const GroundPlane& plane);

/// Parse a plane file written by write_plane_file.
GroundPlane parse_plane_file(const std::string& text);

/// Observation angle: rotation_y minus the ray angle atan2(x, z), wrapped to
/// [-pi, pi). Throws BehindCamera when location.z <= 0.
double compute_alpha(const Vec3& location, double rotation_y);

/// Zero-padded six-digit sample stem, e.g. 7 -> "000007".
std::string sample_name(int index);

}  // namespace cadet
