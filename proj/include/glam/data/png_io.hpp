#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace glam::data {

struct ImageU8 {
  int height = 0;
  int width = 0;
  int channels = 0;                  // 1 (gray) or 3 (rgb)
  std::vector<std::uint8_t> pixels;  // row-major, interleaved
};

ImageU8 read_png_rgb(const std::string& path);
ImageU8 read_png_gray(const std::string& path);

void write_png(const std::string& path, const ImageU8& img);

}  // namespace glam::data
