#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "glam/core/types.hpp"
#include "glam/data/manifest.hpp"

namespace glam::data {

// One lesion look-alike per class. Radii are fractions of the image size;
// pinning min == max fixes the shape scale exactly.
struct ShapeSpec {
  enum class Family { disc, ring, bars, ellipse, blobs, wedge };
  Family family = Family::disc;
  double min_radius_frac = 0.15;
  double max_radius_frac = 0.28;
};

struct SyntheticSpec {
  int num_classes = 6;
  int patches_train = 5;  // per class per species
  int patches_val = 2;
  int patches_test = 3;
  int image_size = 64;
  double noise_level = 0.04;
  // 0 = mouse and human patches look identical; 1 = strongly shifted
  // appearance (tint and contrast polarity) between the species.
  double species_shift = 0.5;
  std::vector<Species> species = {Species::mouse, Species::human};
  std::vector<ShapeSpec> shapes;            // defaults per class if empty
  std::vector<std::string> class_names;     // defaults if empty
  std::uint64_t seed = 1;
};

ShapeSpec default_shape_for_class(int class_index);

// Renders the dataset into the canonical layout
//   <root>/<species>/<class>/<index>_img.png + <index>_mask.png
// and writes <root>/manifest.tsv with the explicit split assignment.
// Deterministic: the same spec always produces identical bytes.
SplitManifest generate_synthetic_dataset(const SyntheticSpec& spec,
                                         const std::string& out_root);

// Mask of a single drawn shape; exposed for the generator's tests.
MaskGrid rasterize_shape(const ShapeSpec& shape, int size, std::uint64_t seed);

}  // namespace glam::data
