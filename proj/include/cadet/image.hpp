#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "cadet/errors.hpp"

namespace cadet {

/// Dense 8-bit RGB raster, row major, top-left origin.
struct Image {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;  // 3 bytes per pixel

  bool in_bounds(int u, int v) const {
    return u >= 0 && v >= 0 && u < width && v < height;
  }

  std::uint8_t* pixel(int u, int v) {
    return rgb.data() + 3 * (static_cast<std::size_t>(v) * width + u);
  }
  const std::uint8_t* pixel(int u, int v) const {
    return rgb.data() + 3 * (static_cast<std::size_t>(v) * width + u);
  }

  void set(int u, int v, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    auto* px = pixel(u, v);
    px[0] = r;
    px[1] = g;
    px[2] = b;
  }

  static Image filled(int width, int height, std::uint8_t r, std::uint8_t g,
                      std::uint8_t b);
};

/// Write an 8-bit RGB PNG. Throws IoError on filesystem or encoder failure.
void write_png(const std::filesystem::path& path, const Image& image);

/// Read an 8-bit RGB PNG, expanding grayscale/palette/alpha inputs to RGB.
Image read_png(const std::filesystem::path& path);

/// Write a single-channel 8-bit grayscale PNG from a row-major buffer.
void write_png_gray(const std::filesystem::path& path, int width, int height,
                    const std::vector<std::uint8_t>& pixels);

}  // namespace cadet
