#include "cadet/occlusion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cadet {

DepthMap DepthMap::constant(int width, int height, float value) {
  DepthMap dm;
  dm.width = width;
  dm.height = height;
  dm.depth.assign(static_cast<std::size_t>(width) * height, value);
  return dm;
}

DepthMap depth_from_rgb(const Image& image, double far_plane) {
  DepthMap dm;
  dm.width = image.width;
  dm.height = image.height;
  dm.depth.resize(static_cast<std::size_t>(image.width) * image.height);
  constexpr double max_code = double((1 << 24) - 1);
  for (int v = 0; v < image.height; ++v) {
    for (int u = 0; u < image.width; ++u) {
      const std::uint8_t* px = image.pixel(u, v);
      const double code = px[0] + 256.0 * px[1] + 65536.0 * px[2];
      const double depth = code / max_code * far_plane;
      dm.at(u, v) =
          code >= max_code ? DepthMap::kSky : static_cast<float>(depth);
    }
  }
  return dm;
}

bool vertex_occluded(const DepthMap& dm, int u, int v, double vertex_depth) {
  if (!dm.in_bounds(u, v)) {
    throw OutOfBounds("vertex pixel (" + std::to_string(u) + ", " +
                      std::to_string(v) + ") outside " +
                      std::to_string(dm.width) + "x" +
                      std::to_string(dm.height) + " depth map");
  }
  const int u0 = std::max(0, u - 1);
  const int u1 = std::min(dm.width - 1, u + 1);
  const int v0 = std::max(0, v - 1);
  const int v1 = std::min(dm.height - 1, v + 1);
  float nearest = DepthMap::kSky;
  for (int vv = v0; vv <= v1; ++vv) {
    for (int uu = u0; uu <= u1; ++uu) {
      nearest = std::min(nearest, dm.at(uu, vv));
    }
  }
  return nearest < vertex_depth - kDepthSlack;
}

OcclusionVerdict object_occluded(const DepthMap& dm, const BoxVertices& corners,
                                 const CameraModel& cam) {
  return object_occluded_sampled([&dm](int u, int v) { return dm.at(u, v); },
                                 dm.width, dm.height, corners, cam);
}

std::vector<VisibleObject> visible_objects(const std::vector<LabeledBox>& boxes,
                                           const DepthMap& dm,
                                           const CameraModel& cam) {
  std::vector<VisibleObject> kept;
  for (const LabeledBox& box : boxes) {
    OcclusionVerdict verdict = object_occluded(dm, box.corners, cam);
    if (verdict.occluded) continue;
    kept.push_back(VisibleObject{box.label, box.corners,
                                 std::move(verdict.vertices)});
  }
  return kept;
}

}  // namespace cadet
