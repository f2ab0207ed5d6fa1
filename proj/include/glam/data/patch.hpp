#pragma once

#include <string>
#include <vector>

#include "glam/core/types.hpp"

namespace glam::data {

// Physical geometry of one species' capture pipeline. The working spacing is
// tied to the capture spacing by an exact identity:
//   working_spacing_um * working_size == capture_spacing_um * capture_size
struct SpeciesProfile {
  double magnification = 40.0;
  double capture_spacing_um = 0.25;  // microns per pixel at capture
  int capture_size = 1024;
  int working_size = 512;

  double working_spacing_um() const {
    return capture_spacing_um * double(capture_size) / double(working_size);
  }
};

// Scanner defaults: 0.25 um/px at 40x (human), 0.125 um/px at 80x (mouse).
inline SpeciesProfile default_profile(Species s) {
  SpeciesProfile p;
  if (s == Species::mouse) {
    p.magnification = 80.0;
    p.capture_spacing_um = 0.125;
  }
  return p;
}

// One image patch with the binary mask of its single annotated lesion class.
struct LabeledPatch {
  MatrixX<float> image;  // (h*w) x channels, pixel index = row * width + col
  MaskGrid mask;         // h x w, values in {0,1}, at least one foreground px
  int height = 0;
  int width = 0;
  int class_id = 0;  // 1-based
  Species species = Species::mouse;
  double spacing_um = 1.0;
};

// Records every file the loaders touch; lets tests audit which masks a
// training run actually read.
struct AccessLog {
  std::vector<std::string> paths;
  void note(const std::string& p) { paths.push_back(p); }
};

}  // namespace glam::data
