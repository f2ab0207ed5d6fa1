#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "glam/core/types.hpp"
#include "glam/data/patch.hpp"

namespace glam::data {

enum class Split { train, val, test };

const char* split_name(Split s);
Split split_from_name(const std::string& name);

struct ManifestEntry {
  std::string path;  // image path relative to the manifest's directory
  int class_id = 0;  // 1-based
  Species species = Species::mouse;
  Split split = Split::train;
};

struct SplitManifest {
  std::vector<ManifestEntry> entries;
  std::uint64_t seed = 0;
  std::array<double, 3> ratios = {0.7, 0.1, 0.2};  // train, val, test
  std::vector<std::string> class_names;
};

// Canonical class order; index i corresponds to class_id i+1.
const std::vector<std::string>& default_class_names();

// Stratified split over <root>/<species>/<class>/<id>_img.png pairs. The
// split is per (species, class), uses largest-remainder rounding so per-class
// counts deviate from the requested ratios by at most one patch, and is a
// pure function of (directory listing, ratios, seed).
SplitManifest build_manifest(const std::string& dataset_root,
                             const std::array<double, 3>& ratios,
                             std::uint64_t seed,
                             const std::vector<std::string>& class_names);

void write_manifest(const SplitManifest& manifest, const std::string& path);
SplitManifest read_manifest(const std::string& path);

std::string mask_path_for(const std::string& image_path);

// Loads the patch behind one manifest entry (paths resolved against root).
LabeledPatch load_patch(const std::string& root, const ManifestEntry& entry,
                        const SpeciesProfile& profile, int num_classes,
                        AccessLog* log = nullptr);

}  // namespace glam::data
