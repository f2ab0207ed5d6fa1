#include "glam/data/png_io.hpp"

#include <png.h>

#include <cstring>
#include <stdexcept>

namespace glam::data {

namespace {

ImageU8 read_png(const std::string& path, std::uint32_t format, int channels) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str())) {
    throw std::runtime_error("cannot read png: " + path + ": " +
                             image.message);
  }
  image.format = format;
  ImageU8 out;
  out.height = static_cast<int>(image.height);
  out.width = static_cast<int>(image.width);
  out.channels = channels;
  out.pixels.resize(size_t(out.height) * out.width * channels);
  if (!png_image_finish_read(&image, nullptr, out.pixels.data(), 0, nullptr)) {
    png_image_free(&image);
    throw std::runtime_error("cannot decode png: " + path + ": " +
                             image.message);
  }
  return out;
}

}  // namespace

ImageU8 read_png_rgb(const std::string& path) {
  return read_png(path, PNG_FORMAT_RGB, 3);
}

ImageU8 read_png_gray(const std::string& path) {
  return read_png(path, PNG_FORMAT_GRAY, 1);
}

void write_png(const std::string& path, const ImageU8& img) {
  if (img.channels != 1 && img.channels != 3) {
    throw std::invalid_argument("write_png: channels must be 1 or 3");
  }
  if (img.pixels.size() != size_t(img.height) * img.width * img.channels) {
    throw std::invalid_argument("write_png: pixel buffer size mismatch");
  }
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(img.width);
  image.height = static_cast<png_uint_32>(img.height);
  image.format = img.channels == 1 ? PNG_FORMAT_GRAY : PNG_FORMAT_RGB;
  if (!png_image_write_to_file(&image, path.c_str(), 0, img.pixels.data(), 0,
                               nullptr)) {
    throw std::runtime_error("cannot write png: " + path + ": " +
                             image.message);
  }
}

}  // namespace glam::data
