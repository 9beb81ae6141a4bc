#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "cadet/geometry.hpp"
#include "cadet/image.hpp"
#include "cadet/kitti_io.hpp"

namespace cadet {

/// Dense per-pixel metric depth, row major. Sky pixels carry +infinity.
struct DepthMap {
  int width = 0;
  int height = 0;
  std::vector<float> depth;

  static constexpr float kSky = std::numeric_limits<float>::infinity();

  bool in_bounds(int u, int v) const {
    return u >= 0 && v >= 0 && u < width && v < height;
  }
  float at(int u, int v) const {
    return depth[static_cast<std::size_t>(v) * width + u];
  }
  float& at(int u, int v) {
    return depth[static_cast<std::size_t>(v) * width + u];
  }

  static DepthMap constant(int width, int height, float value);
};

/// Decode a 24-bit RGB depth image (depth = (R + 256 G + 65536 B) / (2^24 - 1)
/// * far_plane) into metric depth. Pixels at the far plane become sky.
DepthMap depth_from_rgb(const Image& image, double far_plane);

/// Depth slack in meters: a vertex only counts as occluded when some pixel in
/// its 3x3 neighborhood is closer by more than this, which keeps a vertex from
/// being occluded by the surface it sits on.
inline constexpr double kDepthSlack = 0.01;

/// Corner order for 3D boxes: index bit 0 = +x half (length), bit 1 = +y half
/// (width), bit 2 = top face. In CameraRect terms the box is first built in
/// its object frame and then posed, so only the indexing convention matters.
using BoxVertices = std::array<Vec3, 8>;

/// Visibility verdict for the 8 corners of one box. projected entries are
/// nullopt for corners behind the camera.
struct VertexVisibility {
  std::array<bool, 8> occluded{};
  std::array<std::optional<Projection>, 8> projected{};

  int occluded_count() const {
    int n = 0;
    for (bool o : occluded) n += o ? 1 : 0;
    return n;
  }
};

struct OcclusionVerdict {
  bool occluded = false;
  VertexVisibility vertices;
};

/// True when the minimum over the 3x3 neighborhood of (u, v), clipped at the
/// image border and including the center, is closer than vertex_depth by more
/// than kDepthSlack. Throws OutOfBounds when (u, v) is outside the map.
bool vertex_occluded(const DepthMap& dm, int u, int v, double vertex_depth);

/// Core of the box test over any depth source: project all 8 corners and
/// apply the vertex rule against depth_at(u, v) lookups (+infinity = sky).
/// Corners behind the camera or landing outside [0,width)x[0,height) count as
/// occluded; the object is occluded when at least 4 corners are. Projected
/// pixel = floor of the continuous image coordinates.
template <typename DepthAt>
OcclusionVerdict object_occluded_sampled(DepthAt&& depth_at, int width,
                                         int height, const BoxVertices& corners,
                                         const CameraModel& cam) {
  OcclusionVerdict verdict;
  for (std::size_t i = 0; i < corners.size(); ++i) {
    const auto proj = try_project(corners[i], cam);
    verdict.vertices.projected[i] = proj;
    if (!proj) {
      verdict.vertices.occluded[i] = true;  // behind the camera
      continue;
    }
    const int u = static_cast<int>(std::floor(proj->u));
    const int v = static_cast<int>(std::floor(proj->v));
    if (u < 0 || v < 0 || u >= width || v >= height) {
      verdict.vertices.occluded[i] = true;  // off image
      continue;
    }
    double nearest = std::numeric_limits<double>::infinity();
    for (int vv = std::max(0, v - 1); vv <= std::min(height - 1, v + 1); ++vv) {
      for (int uu = std::max(0, u - 1); uu <= std::min(width - 1, u + 1);
           ++uu) {
        nearest = std::min(nearest, static_cast<double>(depth_at(uu, vv)));
      }
    }
    verdict.vertices.occluded[i] = nearest < proj->depth - kDepthSlack;
  }
  verdict.occluded = verdict.vertices.occluded_count() >= 4;
  return verdict;
}

/// The box test against a rendered depth map.
OcclusionVerdict object_occluded(const DepthMap& dm, const BoxVertices& corners,
                                 const CameraModel& cam);

/// One annotation candidate: the label plus its posed CameraRect corners.
struct LabeledBox {
  ObjectLabel label;
  BoxVertices corners;
};

/// A retained annotation with its per-corner visibility.
struct VisibleObject {
  ObjectLabel label;
  BoxVertices corners;
  VertexVisibility visibility;
};

/// Filter candidates down to the ones the depth test calls visible,
/// preserving input order.
std::vector<VisibleObject> visible_objects(const std::vector<LabeledBox>& boxes,
                                           const DepthMap& dm,
                                           const CameraModel& cam);

}  // namespace cadet
