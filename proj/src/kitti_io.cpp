#include "cadet/kitti_io.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string_view>

#include "internal_util.hpp"

namespace cadet {
namespace {

using detail::parse_double;
using detail::split_fields;
using detail::split_lines;

void append_fixed2(std::string& out, double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", value);
  out += buf;
}

void append_sci(std::string& out, double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.11e", value);
  out += buf;
}

void append_matrix_line(std::string& out, const char* key,
                        const double* values, int count) {
  out += key;
  out += ':';
  for (int i = 0; i < count; ++i) {
    out += ' ';
    append_sci(out, values[i]);
  }
  out += '\n';
}

template <typename Mat>
Mat parse_matrix(std::string_view payload, const char* key, int rows,
                 int cols) {
  const auto fields = split_fields(payload);
  if (fields.size() != static_cast<std::size_t>(rows * cols)) {
    throw MalformedMatrix(std::string(key) + ": expected " +
                          std::to_string(rows * cols) + " values, found " +
                          std::to_string(fields.size()));
  }
  Mat m;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      try {
        m(r, c) = parse_double(fields[r * cols + c], key);
      } catch (const NonNumericField& e) {
        throw MalformedMatrix(e.what());
      }
    }
  }
  return m;
}

void check_rotation(const Mat3& r, const char* what) {
  const Mat3 gram = r.transpose() * r;
  if ((gram - Mat3::Identity()).cwiseAbs().maxCoeff() > 1e-6 ||
      std::abs(r.determinant() - 1.0) > 1e-6) {
    throw InvalidCalibration(std::string(what) +
                             ": rotation block is not a proper rotation");
  }
}

}  // namespace

void ObjectLabel::validate() const {
  if (class_name.empty() ||
      class_name.find_first_of(" \t\n") != std::string::npos) {
    throw InvalidLabel("label class name must be a single non-empty token");
  }
  if (is_dont_care()) return;  // DontCare rows conventionally use sentinels

  constexpr double angle_tol = 1e-6;
  if (!(truncation >= 0.0 && truncation <= 1.0)) {
    throw InvalidLabel("truncation outside [0, 1]: " +
                       std::to_string(truncation));
  }
  if (occlusion_flag < 0 || occlusion_flag > 3) {
    throw InvalidLabel("occlusion flag outside {0, 1, 2, 3}: " +
                       std::to_string(occlusion_flag));
  }
  if (std::abs(alpha) > std::numbers::pi + angle_tol) {
    throw InvalidLabel("alpha outside [-pi, pi]: " + std::to_string(alpha));
  }
  if (std::abs(rotation_y) > std::numbers::pi + angle_tol) {
    throw InvalidLabel("rotation_y outside [-pi, pi]: " +
                       std::to_string(rotation_y));
  }
  if (!(right > left) || !(bottom > top)) {
    throw InvalidLabel("degenerate 2D box");
  }
  if (!(height > 0) || !(width > 0) || !(length > 0)) {
    throw InvalidLabel("non-positive 3D dimensions");
  }
}

CalibrationSet CalibrationSet::for_camera(const CameraModel& cam,
                                          const RigidTransform& velo_to_cam) {
  CalibrationSet out;
  const Mat34 p = cam.projection_matrix();
  out.p0 = p;
  out.p1 = p;
  out.p2 = p;
  out.p3 = p;
  out.r0_rect = Mat3::Identity();
  out.tr_velo_to_cam.leftCols<3>() = velo_to_cam.rotation;
  out.tr_velo_to_cam.col(3) = velo_to_cam.translation;
  out.tr_imu_to_velo.leftCols<3>() = Mat3::Identity();
  out.tr_imu_to_velo.col(3) = Vec3::Zero();
  return out;
}

void CalibrationSet::validate() const {
  for (const Mat34* p : {&p1, &p2, &p3}) {
    if ((*p - p0).cwiseAbs().maxCoeff() > 1e-6) {
      throw InvalidCalibration("projection matrices P0..P3 must agree");
    }
  }
  if (std::abs(p2(2, 2) - 1.0) > 1e-9 ||
      p2.row(2).head<2>().cwiseAbs().maxCoeff() > 1e-9 ||
      std::abs(p2(2, 3)) > 1e-9) {
    throw InvalidCalibration("P2 bottom row must be [0 0 1 0]");
  }
  if (!(p2(0, 0) > 0) || !(p2(1, 1) > 0)) {
    throw InvalidCalibration("focal lengths must be positive");
  }
  check_rotation(r0_rect, "R0_rect");
  check_rotation(tr_velo_to_cam.leftCols<3>(), "Tr_velo_to_cam");
  check_rotation(tr_imu_to_velo.leftCols<3>(), "Tr_imu_to_velo");
}

void GroundPlane::validate() const {
  if (std::abs(normal.norm() - 1.0) > 1e-6) {
    throw InvalidPlane("plane normal must be unit length, |n| = " +
                       std::to_string(normal.norm()));
  }
  if (!(normal.y() < 0)) {
    throw InvalidPlane("plane normal must point up (normal.y < 0 in camera "
                       "axes)");
  }
}

std::string write_label_file(const std::vector<ObjectLabel>& labels) {
  std::string out;
  for (const ObjectLabel& label : labels) {
    label.validate();
    out += label.class_name;
    out += ' ';
    append_fixed2(out, label.truncation);
    out += ' ';
    out += std::to_string(label.occlusion_flag);
    for (double value : {label.alpha, label.left, label.top, label.right,
                         label.bottom, label.height, label.width, label.length,
                         label.location.x(), label.location.y(),
                         label.location.z(), label.rotation_y}) {
      out += ' ';
      append_fixed2(out, value);
    }
    if (label.score) {
      out += ' ';
      append_fixed2(out, *label.score);
    }
    out += '\n';
  }
  return out;
}

std::vector<ObjectLabel> parse_label_file(const std::string& text) {
  std::vector<ObjectLabel> labels;
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto fields = split_fields(lines[i]);
    if (fields.empty()) continue;
    if (fields.size() != 15 && fields.size() != 16) {
      throw MalformedLine(i + 1, fields.size(),
                          "label line " + std::to_string(i + 1) + " has " +
                              std::to_string(fields.size()) +
                              " fields, expected 15 or 16");
    }
    const char* ctx = "label";
    ObjectLabel label;
    label.class_name = std::string(fields[0]);
    label.truncation = parse_double(fields[1], ctx);
    label.occlusion_flag = static_cast<int>(parse_double(fields[2], ctx));
    label.alpha = parse_double(fields[3], ctx);
    label.left = parse_double(fields[4], ctx);
    label.top = parse_double(fields[5], ctx);
    label.right = parse_double(fields[6], ctx);
    label.bottom = parse_double(fields[7], ctx);
    label.height = parse_double(fields[8], ctx);
    label.width = parse_double(fields[9], ctx);
    label.length = parse_double(fields[10], ctx);
    label.location =
        Vec3(parse_double(fields[11], ctx), parse_double(fields[12], ctx),
             parse_double(fields[13], ctx));
    label.rotation_y = parse_double(fields[14], ctx);
    if (fields.size() == 16) label.score = parse_double(fields[15], ctx);
    labels.push_back(std::move(label));
  }
  return labels;
}

std::string write_calib_file(const CalibrationSet& calib) {
  std::string out;
  // Eigen stores column-major; serialize row-major as the format requires.
  auto row_major = [](const Mat34& m) {
    std::array<double, 12> v{};
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 4; ++c) v[r * 4 + c] = m(r, c);
    return v;
  };
  append_matrix_line(out, "P0", row_major(calib.p0).data(), 12);
  append_matrix_line(out, "P1", row_major(calib.p1).data(), 12);
  append_matrix_line(out, "P2", row_major(calib.p2).data(), 12);
  append_matrix_line(out, "P3", row_major(calib.p3).data(), 12);
  std::array<double, 9> r0{};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) r0[r * 3 + c] = calib.r0_rect(r, c);
  append_matrix_line(out, "R0_rect", r0.data(), 9);
  append_matrix_line(out, "Tr_velo_to_cam",
                     row_major(calib.tr_velo_to_cam).data(), 12);
  append_matrix_line(out, "Tr_imu_to_velo",
                     row_major(calib.tr_imu_to_velo).data(), 12);
  return out;
}

CalibrationSet parse_calib_file(const std::string& text) {
  CalibrationSet out;
  bool seen[7] = {};
  const char* keys[7] = {"P0",      "P1",
                         "P2",      "P3",
                         "R0_rect", "Tr_velo_to_cam",
                         "Tr_imu_to_velo"};
  using RowMat34 = Eigen::Matrix<double, 3, 4, Eigen::RowMajor>;
  using RowMat3 = Eigen::Matrix<double, 3, 3, Eigen::RowMajor>;

  for (std::string_view line : split_lines(text)) {
    if (split_fields(line).empty()) continue;
    const std::size_t colon = line.find(':');
    if (colon == std::string_view::npos) {
      throw MalformedMatrix("calibration line without 'KEY:' prefix");
    }
    const std::string key(line.substr(0, colon));
    const std::string_view payload = line.substr(colon + 1);
    int index = -1;
    for (int i = 0; i < 7; ++i) {
      if (key == keys[i]) index = i;
    }
    if (index < 0) continue;  // unknown keys are allowed and skipped
    seen[index] = true;
    switch (index) {
      case 0: out.p0 = parse_matrix<RowMat34>(payload, keys[0], 3, 4); break;
      case 1: out.p1 = parse_matrix<RowMat34>(payload, keys[1], 3, 4); break;
      case 2: out.p2 = parse_matrix<RowMat34>(payload, keys[2], 3, 4); break;
      case 3: out.p3 = parse_matrix<RowMat34>(payload, keys[3], 3, 4); break;
      case 4:
        out.r0_rect = parse_matrix<RowMat3>(payload, keys[4], 3, 3);
        break;
      case 5:
        out.tr_velo_to_cam = parse_matrix<RowMat34>(payload, keys[5], 3, 4);
        break;
      case 6:
        out.tr_imu_to_velo = parse_matrix<RowMat34>(payload, keys[6], 3, 4);
        break;
    }
  }
  for (int i = 0; i < 7; ++i) {
    if (!seen[i]) {
      throw MissingKey(std::string("calibration key missing: ") + keys[i]);
    }
  }
  return out;
}

std::vector<std::uint8_t> write_velodyne_bin(const VelodyneScan& scan) {
  if (scan.intensity.size() != scan.cloud.size()) {
    throw Error("scan has " + std::to_string(scan.cloud.size()) +
                " points but " + std::to_string(scan.intensity.size()) +
                " intensities");
  }
  std::vector<std::uint8_t> bytes;
  bytes.reserve(scan.size() * 16);
  for (std::size_t i = 0; i < scan.size(); ++i) {
    const Vec3& p = scan.cloud.points[i];
    detail::push_f32_le(bytes, static_cast<float>(p.x()));
    detail::push_f32_le(bytes, static_cast<float>(p.y()));
    detail::push_f32_le(bytes, static_cast<float>(p.z()));
    detail::push_f32_le(bytes, scan.intensity[i]);
  }
  return bytes;
}

VelodyneScan read_velodyne_bin(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() % 16 != 0) {
    throw TruncatedFile("packed scan length " + std::to_string(bytes.size()) +
                        " is not a multiple of 16");
  }
  auto pull = [&bytes](std::size_t offset) {
    return detail::pull_f32_le(bytes.data() + offset);
  };
  VelodyneScan scan;
  const std::size_t n = bytes.size() / 16;
  scan.cloud.points.reserve(n);
  scan.intensity.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t base = i * 16;
    scan.cloud.points.emplace_back(pull(base), pull(base + 4), pull(base + 8));
    scan.intensity.push_back(pull(base + 12));
  }
  return scan;
}

std::string write_plane_file(const GroundPlane& plane) {
  plane.validate();
  std::string out = "# Plane\nWidth 4\nHeight 1\n";
  append_sci(out, plane.normal.x());
  out += ' ';
  append_sci(out, plane.normal.y());
  out += ' ';
  append_sci(out, plane.normal.z());
  out += ' ';
  append_sci(out, plane.d);
  out += '\n';
  return out;
}

GroundPlane parse_plane_file(const std::string& text) {
  const auto lines = split_lines(text);
  if (lines.size() < 4) {
    throw MalformedLine(lines.size(), 0,
                        "plane file needs a 3-line header plus coefficients");
  }
  const auto header = split_fields(lines[0]);
  if (header.size() != 2 || header[0] != "#" || header[1] != "Plane") {
    throw MalformedLine(1, header.size(), "plane file must start with '# Plane'");
  }
  const auto coeffs = split_fields(lines[3]);
  if (coeffs.size() != 4) {
    throw MalformedLine(4, coeffs.size(),
                        "plane coefficient line has " +
                            std::to_string(coeffs.size()) +
                            " fields, expected 4");
  }
  GroundPlane plane;
  plane.normal = Vec3(parse_double(coeffs[0], "plane"),
                      parse_double(coeffs[1], "plane"),
                      parse_double(coeffs[2], "plane"));
  plane.d = parse_double(coeffs[3], "plane");
  return plane;
}

double compute_alpha(const Vec3& location, double rotation_y) {
  if (!(location.z() > 0)) {
    throw BehindCamera("alpha undefined for non-positive depth " +
                       std::to_string(location.z()));
  }
  return wrap_to_pi(rotation_y - std::atan2(location.x(), location.z()));
}

std::string sample_name(int index) {
  if (index < 0 || index > 999999) {
    throw Error("sample index outside [0, 999999]: " + std::to_string(index));
  }
  char buf[8];
  std::snprintf(buf, sizeof(buf), "%06d", index);
  return buf;
}

}  // namespace cadet
