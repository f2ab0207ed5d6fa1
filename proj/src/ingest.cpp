#include "glam/data/ingest.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include "glam/data/png_io.hpp"
#include "glam/data/resize.hpp"

namespace glam::data {

LabeledPatch ingest_patch(const std::string& image_file,
                          const std::string& mask_file, int class_id,
                          int num_classes, Species species,
                          const SpeciesProfile& profile, AccessLog* log) {
  if (class_id < 1 || class_id > num_classes) {
    throw std::invalid_argument("ingest_patch: class_id " +
                                std::to_string(class_id) +
                                " outside [1, " + std::to_string(num_classes) +
                                "]");
  }
  const ImageU8 img = read_png_rgb(image_file);
  const ImageU8 msk = read_png_gray(mask_file);
  if (log) {
    log->note(image_file);
    log->note(mask_file);
  }
  if (img.height != msk.height || img.width != msk.width) {
    throw std::runtime_error("ingest_patch: image " + image_file + " is " +
                             std::to_string(img.width) + "x" +
                             std::to_string(img.height) + " but mask is " +
                             std::to_string(msk.width) + "x" +
                             std::to_string(msk.height));
  }

  std::set<std::uint8_t> values(msk.pixels.begin(), msk.pixels.end());
  if (values.size() > 2 || (values.size() == 2 && *values.begin() != 0)) {
    throw std::runtime_error("ingest_patch: mask " + mask_file +
                             " is not two-valued (found " +
                             std::to_string(values.size()) +
                             " distinct values)");
  }

  MaskGrid raw_mask(msk.height, msk.width);
  for (int r = 0; r < msk.height; ++r)
    for (int c = 0; c < msk.width; ++c)
      raw_mask(r, c) = msk.pixels[size_t(r) * msk.width + c] != 0 ? 1 : 0;

  MatrixX<float> raw_img(Eigen::Index(img.height) * img.width, 3);
  for (Eigen::Index p = 0; p < raw_img.rows(); ++p)
    for (int c = 0; c < 3; ++c)
      raw_img(p, c) = float(img.pixels[size_t(p) * 3 + c]) / 255.0f;

  const int ws = profile.working_size;
  LabeledPatch patch;
  patch.image = resize_bilinear(raw_img, img.height, img.width, ws, ws);
  patch.mask = resize_nearest(raw_mask, ws, ws);
  patch.height = ws;
  patch.width = ws;
  patch.class_id = class_id;
  patch.species = species;
  patch.spacing_um = profile.working_spacing_um();

  long long fg = 0;
  for (int r = 0; r < ws; ++r) {
    for (int c = 0; c < ws; ++c) {
      if (patch.mask(r, c) > 1) {
        throw std::runtime_error("ingest_patch: mask " + mask_file +
                                 " non-binary after resize");
      }
      fg += patch.mask(r, c);
    }
  }
  if (fg == 0) {
    throw std::runtime_error("ingest_patch: mask " + mask_file +
                             " has no foreground at working size");
  }
  return patch;
}

void write_patch(const LabeledPatch& patch, const std::string& image_file,
                 const std::string& mask_file) {
  ImageU8 img;
  img.height = patch.height;
  img.width = patch.width;
  img.channels = 3;
  img.pixels.resize(size_t(patch.height) * patch.width * 3);
  for (Eigen::Index p = 0; p < patch.image.rows(); ++p) {
    for (int c = 0; c < 3; ++c) {
      const float v = std::min(std::max(patch.image(p, c), 0.0f), 1.0f);
      img.pixels[size_t(p) * 3 + c] =
          static_cast<std::uint8_t>(std::lround(v * 255.0f));
    }
  }
  write_png(image_file, img);

  ImageU8 msk;
  msk.height = patch.height;
  msk.width = patch.width;
  msk.channels = 1;
  msk.pixels.resize(size_t(patch.height) * patch.width);
  for (int r = 0; r < patch.height; ++r)
    for (int c = 0; c < patch.width; ++c)
      msk.pixels[size_t(r) * patch.width + c] = patch.mask(r, c) ? 255 : 0;
  write_png(mask_file, msk);
}

}  // namespace glam::data
