#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "cadet/bev.hpp"
#include "cadet/geometry.hpp"
#include "cadet/kitti_io.hpp"
#include "cadet/occlusion.hpp"
#include "cadet/pipeline.hpp"
#include "cadet/stats.hpp"

namespace py = pybind11;
using namespace cadet;

namespace {

PointCloud cloud_from_array(const py::array_t<double>& points) {
  if (points.ndim() != 2 || points.shape(1) != 3) {
    throw py::value_error("points must have shape (N, 3)");
  }
  PointCloud cloud;
  cloud.frame = Frame::Velodyne;
  const auto view = points.unchecked<2>();
  cloud.points.reserve(static_cast<std::size_t>(view.shape(0)));
  for (py::ssize_t i = 0; i < view.shape(0); ++i) {
    cloud.points.emplace_back(view(i, 0), view(i, 1), view(i, 2));
  }
  return cloud;
}

DepthMap depth_from_array(const py::array_t<float>& depth) {
  if (depth.ndim() != 2) throw py::value_error("depth must be 2D (H, W)");
  DepthMap dm;
  dm.height = static_cast<int>(depth.shape(0));
  dm.width = static_cast<int>(depth.shape(1));
  const auto view = depth.unchecked<2>();
  dm.depth.resize(static_cast<std::size_t>(dm.width) * dm.height);
  for (py::ssize_t v = 0; v < view.shape(0); ++v) {
    for (py::ssize_t u = 0; u < view.shape(1); ++u) {
      dm.depth[static_cast<std::size_t>(v) * dm.width + u] = view(v, u);
    }
  }
  return dm;
}

BoxVertices corners_from_array(const py::array_t<double>& corners) {
  if (corners.ndim() != 2 || corners.shape(0) != 8 || corners.shape(1) != 3) {
    throw py::value_error("corners must have shape (8, 3)");
  }
  BoxVertices out;
  const auto view = corners.unchecked<2>();
  for (int i = 0; i < 8; ++i) {
    out[i] = Vec3(view(i, 0), view(i, 1), view(i, 2));
  }
  return out;
}

py::dict stack_to_dict(const BevStack& stack) {
  py::array_t<float> data({stack.layer_count(), stack.rows, stack.cols});
  std::copy(stack.data.begin(), stack.data.end(), data.mutable_data());
  py::list meta;
  for (const LayerMeta& m : stack.meta) {
    py::dict entry;
    entry["group"] = m.group == BevGroup::Slice ? "slice" : "cloud";
    entry["feature"] = feature_name(m.feature);
    entry["slice_index"] = m.slice_index;
    meta.append(entry);
  }
  py::dict out;
  out["data"] = std::move(data);
  out["meta"] = std::move(meta);
  char hex[24];
  std::snprintf(hex, sizeof(hex), "%016llx",
                static_cast<unsigned long long>(stack.config_hash));
  out["config_hash"] = std::string(hex);
  return out;
}

}  // namespace

PYBIND11_MODULE(_cadet, m) {
  m.doc() = "Synthetic KITTI-style dataset toolkit";

  py::register_exception<Error>(m, "CadetError", PyExc_RuntimeError);

  // --- geometry -----------------------------------------------------------
  py::class_<CameraModel>(m, "CameraModel")
      .def(py::init(&CameraModel::pinhole), py::arg("fx"), py::arg("fy"),
           py::arg("cx"), py::arg("cy"), py::arg("width"), py::arg("height"))
      .def_readonly("fx", &CameraModel::fx)
      .def_readonly("fy", &CameraModel::fy)
      .def_readonly("cx", &CameraModel::cx)
      .def_readonly("cy", &CameraModel::cy)
      .def_readonly("width", &CameraModel::width)
      .def_readonly("height", &CameraModel::height)
      .def("projection_matrix", &CameraModel::projection_matrix);

  m.def("wrap_to_pi", &wrap_to_pi, py::arg("angle"));
  m.def("compute_alpha", &compute_alpha, py::arg("location"),
        py::arg("rotation_y"));
  m.def("sample_name", &sample_name, py::arg("index"));

  // --- bird's eye view ----------------------------------------------------
  py::class_<BevConfig>(m, "BevConfig")
      .def(py::init<>())
      .def_readwrite("x_range", &BevConfig::x_range)
      .def_readwrite("y_range", &BevConfig::y_range)
      .def_readwrite("z_range", &BevConfig::z_range)
      .def_readwrite("cell_size", &BevConfig::cell_size)
      .def_readwrite("num_slices", &BevConfig::num_slices)
      .def_readwrite("density_log_base_count",
                     &BevConfig::density_log_base_count)
      .def_property_readonly("rows", &BevConfig::rows)
      .def_property_readonly("cols", &BevConfig::cols)
      .def_property_readonly("layer_count", &BevConfig::layer_count)
      .def("validate", &BevConfig::validate);

  m.def("bev_preset", &bev_preset, py::arg("name"));
  m.def("density_value", &density_value, py::arg("count"),
        py::arg("log_base_count") = 16);
  m.def("write_bev_config", &write_bev_config, py::arg("config"));
  m.def("parse_bev_config", &parse_bev_config, py::arg("text"));
  m.def(
      "rasterize",
      [](const py::array_t<double>& points, const BevConfig& cfg) {
        return stack_to_dict(rasterize(cloud_from_array(points), cfg));
      },
      py::arg("points"), py::arg("config"),
      "Rasterize an (N, 3) Velodyne-frame point array into a "
      "(layers, rows, cols) float32 stack with layer metadata.");

  // --- KITTI file formats --------------------------------------------------
  py::class_<ObjectLabel>(m, "ObjectLabel")
      .def(py::init<>())
      .def_readwrite("class_name", &ObjectLabel::class_name)
      .def_readwrite("truncation", &ObjectLabel::truncation)
      .def_readwrite("occlusion_flag", &ObjectLabel::occlusion_flag)
      .def_readwrite("alpha", &ObjectLabel::alpha)
      .def_readwrite("left", &ObjectLabel::left)
      .def_readwrite("top", &ObjectLabel::top)
      .def_readwrite("right", &ObjectLabel::right)
      .def_readwrite("bottom", &ObjectLabel::bottom)
      .def_readwrite("height", &ObjectLabel::height)
      .def_readwrite("width", &ObjectLabel::width)
      .def_readwrite("length", &ObjectLabel::length)
      .def_readwrite("location", &ObjectLabel::location)
      .def_readwrite("rotation_y", &ObjectLabel::rotation_y)
      .def_readwrite("score", &ObjectLabel::score)
      .def("validate", &ObjectLabel::validate)
      .def("__repr__", [](const ObjectLabel& l) {
        return "<ObjectLabel " + l.class_name + ">";
      });

  m.def("write_label_file", &write_label_file, py::arg("labels"));
  m.def("parse_label_file", &parse_label_file, py::arg("text"));

  py::class_<CalibrationSet>(m, "CalibrationSet")
      .def(py::init<>())
      .def_readwrite("p0", &CalibrationSet::p0)
      .def_readwrite("p1", &CalibrationSet::p1)
      .def_readwrite("p2", &CalibrationSet::p2)
      .def_readwrite("p3", &CalibrationSet::p3)
      .def_readwrite("r0_rect", &CalibrationSet::r0_rect)
      .def_readwrite("tr_velo_to_cam", &CalibrationSet::tr_velo_to_cam)
      .def_readwrite("tr_imu_to_velo", &CalibrationSet::tr_imu_to_velo)
      .def("validate", &CalibrationSet::validate)
      .def_static(
          "for_camera",
          [](const CameraModel& cam) {
            return CalibrationSet::for_camera(cam,
                                              velodyne_to_camera_transform());
          },
          py::arg("camera"));

  m.def("write_calib_file", &write_calib_file, py::arg("calib"));
  m.def("parse_calib_file", &parse_calib_file, py::arg("text"));

  py::class_<GroundPlane>(m, "GroundPlane")
      .def(py::init<>())
      .def_readwrite("normal", &GroundPlane::normal)
      .def_readwrite("d", &GroundPlane::d)
      .def("camera_height", &GroundPlane::camera_height)
      .def("validate", &GroundPlane::validate);

  m.def("write_plane_file", &write_plane_file, py::arg("plane"));
  m.def("parse_plane_file", &parse_plane_file, py::arg("text"));

  m.def(
      "write_velodyne_bin",
      [](const py::array_t<double>& points, const py::array_t<float>& intensity) {
        VelodyneScan scan;
        scan.cloud = cloud_from_array(points);
        if (intensity.ndim() != 1 ||
            static_cast<std::size_t>(intensity.shape(0)) != scan.cloud.size()) {
          throw py::value_error("intensity must be 1D with one value per point");
        }
        const auto view = intensity.unchecked<1>();
        scan.intensity.assign(view.data(0), view.data(0) + view.shape(0));
        const auto bytes = write_velodyne_bin(scan);
        return py::bytes(reinterpret_cast<const char*>(bytes.data()),
                         bytes.size());
      },
      py::arg("points"), py::arg("intensity"));
  m.def(
      "read_velodyne_bin",
      [](const py::bytes& blob) {
        std::string_view raw = std::string_view(blob);
        const VelodyneScan scan = read_velodyne_bin(std::vector<std::uint8_t>(
            raw.begin(), raw.end()));
        const py::ssize_t n = static_cast<py::ssize_t>(scan.size());
        py::array_t<double> points({n, py::ssize_t(3)});
        py::array_t<float> intensity(n);
        auto pv = points.mutable_unchecked<2>();
        auto iv = intensity.mutable_unchecked<1>();
        for (py::ssize_t i = 0; i < n; ++i) {
          pv(i, 0) = scan.cloud.points[i].x();
          pv(i, 1) = scan.cloud.points[i].y();
          pv(i, 2) = scan.cloud.points[i].z();
          iv(i) = scan.intensity[i];
        }
        return py::make_tuple(points, intensity);
      },
      py::arg("data"));

  // --- occlusion ------------------------------------------------------------
  m.def(
      "vertex_occluded",
      [](const py::array_t<float>& depth, int u, int v, double vertex_depth) {
        return vertex_occluded(depth_from_array(depth), u, v, vertex_depth);
      },
      py::arg("depth"), py::arg("u"), py::arg("v"), py::arg("vertex_depth"));
  m.def(
      "object_occluded",
      [](const py::array_t<float>& depth, const py::array_t<double>& corners,
         const CameraModel& cam) {
        const OcclusionVerdict verdict = object_occluded(
            depth_from_array(depth), corners_from_array(corners), cam);
        py::dict out;
        out["occluded"] = verdict.occluded;
        out["occluded_count"] = verdict.vertices.occluded_count();
        py::list per_vertex;
        for (bool o : verdict.vertices.occluded) per_vertex.append(o);
        out["vertex_occluded"] = std::move(per_vertex);
        return out;
      },
      py::arg("depth"), py::arg("corners"), py::arg("camera"));

  // --- pipeline -------------------------------------------------------------
  m.def(
      "generate_dataset",
      [](const std::filesystem::path& out_dir, int samples, std::uint64_t seed,
         int reset_interval, double cars, double pedestrians) {
        GenerateOptions opts;
        opts.samples = samples;
        opts.seed = seed;
        opts.reset_interval = reset_interval;
        opts.scene.mixture.cars_per_scene = cars;
        opts.scene.mixture.pedestrians_per_scene = pedestrians;
        const GenerateReport report = generate_dataset(opts, out_dir);
        py::dict out;
        out["samples"] = report.samples;
        out["labeled_objects"] = report.labeled_objects;
        out["class_counts"] = report.class_counts;
        out["oracle_comparisons"] = report.oracle_comparisons;
        out["oracle_disagreements"] = report.oracle_disagreements;
        return out;
      },
      py::arg("out_dir"), py::arg("samples") = 1, py::arg("seed") = 0,
      py::arg("reset_interval") = 25, py::arg("cars") = 1.4,
      py::arg("pedestrians") = 0.49);
  m.def(
      "validate_dataset",
      [](const std::filesystem::path& dir) {
        std::vector<std::pair<std::string, std::string>> out;
        for (const Violation& v : validate_dataset(DatasetLayout{dir}).violations) {
          out.emplace_back(v.path.string(), v.message);
        }
        return out;
      },
      py::arg("dataset_dir"));
  m.def(
      "dataset_stats_csv",
      [](const std::filesystem::path& dir) {
        return stats_to_csv(dataset_stats(DatasetLayout{dir}));
      },
      py::arg("dataset_dir"));
}
