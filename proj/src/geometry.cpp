#include "cadet/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace cadet {

const char* frame_name(Frame frame) {
  switch (frame) {
    case Frame::SimWorld:
      return "SimWorld";
    case Frame::SimVehicle:
      return "SimVehicle";
    case Frame::Velodyne:
      return "Velodyne";
    case Frame::CameraRect:
      return "CameraRect";
    case Frame::Image:
      return "Image";
  }
  return "?";
}

bool RigidTransform::is_valid(double tol) const {
  const Mat3 gram = rotation.transpose() * rotation;
  if ((gram - Mat3::Identity()).cwiseAbs().maxCoeff() > tol) return false;
  return std::abs(rotation.determinant() - 1.0) <= tol;
}

RigidTransform RigidTransform::identity(Frame frame) {
  RigidTransform t;
  t.from_frame = frame;
  t.to_frame = frame;
  return t;
}

RigidTransform inverse(const RigidTransform& t) {
  RigidTransform out;
  out.rotation = t.rotation.transpose();
  out.translation = -(out.rotation * t.translation);
  out.from_frame = t.to_frame;
  out.to_frame = t.from_frame;
  return out;
}

RigidTransform compose(const RigidTransform& a, const RigidTransform& b) {
  if (b.to_frame != a.from_frame) {
    throw FrameMismatch(std::string("compose: inner transform ends in ") +
                        frame_name(b.to_frame) + " but outer one starts in " +
                        frame_name(a.from_frame));
  }
  RigidTransform out;
  out.rotation = a.rotation * b.rotation;
  out.translation = a.rotation * b.translation + a.translation;
  out.from_frame = b.from_frame;
  out.to_frame = a.to_frame;
  return out;
}

Mat34 CameraModel::projection_matrix() const {
  Mat34 p = Mat34::Zero();
  p(0, 0) = fx;
  p(0, 2) = cx;
  p(1, 1) = fy;
  p(1, 2) = cy;
  p(2, 2) = 1.0;
  return p;
}

CameraModel CameraModel::pinhole(double fx, double fy, double cx, double cy,
                                 int width, int height) {
  return CameraModel{fx, fy, cx, cy, width, height};
}

Vec3 sim_to_velodyne(const Vec3& p) { return {p.x(), -p.y(), p.z()}; }

RigidTransform velodyne_to_camera_transform() {
  RigidTransform t;
  t.rotation << 0, -1, 0,  //
      0, 0, -1,            //
      1, 0, 0;
  t.from_frame = Frame::Velodyne;
  t.to_frame = Frame::CameraRect;
  return t;
}

Vec3 velodyne_to_camera(const Vec3& p, const RigidTransform& rig) {
  if (rig.from_frame != Frame::Velodyne || rig.to_frame != Frame::CameraRect) {
    throw FrameMismatch(std::string("velodyne_to_camera: rig maps ") +
                        frame_name(rig.from_frame) + " to " +
                        frame_name(rig.to_frame));
  }
  return rig.apply(p);
}

std::optional<Projection> try_project(const Vec3& p, const CameraModel& cam,
                                      double near) {
  if (p.z() < near) return std::nullopt;
  Projection out;
  out.u = cam.fx * p.x() / p.z() + cam.cx;
  out.v = cam.fy * p.y() / p.z() + cam.cy;
  out.depth = p.z();
  return out;
}

Projection project(const Vec3& p, const CameraModel& cam, double near) {
  auto proj = try_project(p, cam, near);
  if (!proj) {
    throw BehindCamera("project: point at depth " + std::to_string(p.z()) +
                       " is behind the near plane");
  }
  return *proj;
}

Mat3 attitude_correction(const Attitude& att) {
  const double cp = std::cos(att.pitch);
  const double sp = std::sin(att.pitch);
  const double cr = std::cos(att.roll);
  const double sr = std::sin(att.roll);
  Mat3 pitch;
  pitch << cp, 0, -sp,  //
      0, 1, 0,          //
      sp, 0, cp;
  Mat3 roll;
  roll << 1, 0, 0,  //
      0, cr, -sr,   //
      0, sr, cr;
  return roll * pitch;
}

PointCloud correct_attitude(const PointCloud& cloud, const Attitude& att) {
  if (cloud.frame != Frame::SimVehicle) {
    throw FrameMismatch(std::string("correct_attitude expects a SimVehicle "
                                    "cloud, got ") +
                        frame_name(cloud.frame));
  }
  const Mat3 r = attitude_correction(att);
  PointCloud out;
  out.frame = Frame::SimVehicle;
  out.points.reserve(cloud.points.size());
  for (const Vec3& p : cloud.points) out.points.push_back(r * p);
  return out;
}

double wrap_to_pi(double angle) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double wrapped =
      angle - two_pi * std::floor((angle + std::numbers::pi) / two_pi);
  // Guard against floor rounding putting us exactly on +pi.
  if (wrapped >= std::numbers::pi) wrapped -= two_pi;
  if (wrapped < -std::numbers::pi) wrapped += two_pi;
  return wrapped;
}

}  // namespace cadet
