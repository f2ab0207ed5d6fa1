#pragma once

#include <string>

#include "glam/data/patch.hpp"

namespace glam::data {

// Reads an image/mask pair, resizes it to the profile's working size
// (bilinear image, nearest-neighbour mask), scales intensities to [0,1] and
// stamps the physical spacing from the profile identity.
//
// Rejected with a diagnostic: unreadable files, image/mask size mismatch,
// masks that are not two-valued, masks left non-binary or empty after the
// resize, class ids outside [1, num_classes].
LabeledPatch ingest_patch(const std::string& image_file,
                          const std::string& mask_file, int class_id,
                          int num_classes, Species species,
                          const SpeciesProfile& profile,
                          AccessLog* log = nullptr);

// Writes patch.image / patch.mask back out as 8-bit PNGs (mask foreground
// stored as 255).
void write_patch(const LabeledPatch& patch, const std::string& image_file,
                 const std::string& mask_file);

}  // namespace glam::data
