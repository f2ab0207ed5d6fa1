#include "glam/data/manifest.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "glam/core/rng.hpp"
#include "glam/data/ingest.hpp"

namespace fs = std::filesystem;

namespace glam::data {

const char* split_name(Split s) {
  switch (s) {
    case Split::train: return "train";
    case Split::val: return "val";
    default: return "test";
  }
}

Split split_from_name(const std::string& name) {
  if (name == "train") return Split::train;
  if (name == "val") return Split::val;
  if (name == "test") return Split::test;
  throw std::invalid_argument("unknown split: " + name);
}

const std::vector<std::string>& default_class_names() {
  static const std::vector<std::string> names = {"GS", "HN", "ML",
                                                 "MA", "NS", "SS"};
  return names;
}

namespace {

// Largest-remainder apportionment of n into three splits.
std::array<int, 3> split_counts(int n, const std::array<double, 3>& ratios) {
  std::array<int, 3> counts{};
  std::array<double, 3> frac{};
  int assigned = 0;
  for (int i = 0; i < 3; ++i) {
    const double ideal = n * ratios[i];
    counts[i] = static_cast<int>(std::floor(ideal));
    frac[i] = ideal - counts[i];
    assigned += counts[i];
  }
  std::array<int, 3> order = {0, 1, 2};
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return frac[a] > frac[b]; });
  for (int i = 0; assigned < n; ++i, ++assigned) counts[order[i % 3]] += 1;
  return counts;
}

}  // namespace

SplitManifest build_manifest(const std::string& dataset_root,
                             const std::array<double, 3>& ratios,
                             std::uint64_t seed,
                             const std::vector<std::string>& class_names) {
  const double total = ratios[0] + ratios[1] + ratios[2];
  if (std::abs(total - 1.0) > 1e-9) {
    throw std::invalid_argument("split ratios must sum to 1");
  }
  SplitManifest manifest;
  manifest.seed = seed;
  manifest.ratios = ratios;
  manifest.class_names = class_names;

  for (Species species : {Species::mouse, Species::human}) {
    const fs::path species_dir = fs::path(dataset_root) / species_name(species);
    if (!fs::exists(species_dir)) continue;
    for (size_t ci = 0; ci < class_names.size(); ++ci) {
      const fs::path class_dir = species_dir / class_names[ci];
      std::vector<std::string> images;
      if (fs::exists(class_dir)) {
        for (const auto& e : fs::directory_iterator(class_dir)) {
          const std::string name = e.path().filename().string();
          if (name.size() > 8 && name.ends_with("_img.png")) {
            images.push_back(name);
          }
        }
      }
      if (images.empty()) {
        throw std::runtime_error("build_manifest: class '" + class_names[ci] +
                                 "' has no image/mask pairs under " +
                                 species_dir.string());
      }
      std::sort(images.begin(), images.end());

      std::vector<int> idx(images.size());
      for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
      Rng rng(derive_seed(seed, std::string(species_name(species)) + "/" +
                                    class_names[ci]));
      rng.shuffle(idx.begin(), idx.end());

      const auto counts = split_counts(static_cast<int>(images.size()), ratios);
      std::vector<Split> assignment(images.size());
      int cursor = 0;
      for (int s = 0; s < 3; ++s) {
        for (int i = 0; i < counts[s]; ++i) {
          assignment[idx[cursor++]] = static_cast<Split>(s);
        }
      }
      for (size_t i = 0; i < images.size(); ++i) {
        ManifestEntry entry;
        entry.path = (fs::path(species_name(species)) / class_names[ci] /
                      images[i])
                         .generic_string();
        entry.class_id = static_cast<int>(ci) + 1;
        entry.species = species;
        entry.split = assignment[i];
        manifest.entries.push_back(std::move(entry));
      }
    }
  }
  if (manifest.entries.empty()) {
    throw std::runtime_error("build_manifest: no species directories under " +
                             dataset_root);
  }
  return manifest;
}

void write_manifest(const SplitManifest& manifest, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write manifest: " + path);
  out << "# glam split manifest\n";
  out << "# seed=" << manifest.seed << "\n";
  char buf[128];
  std::snprintf(buf, sizeof(buf), "# ratios=%.6g,%.6g,%.6g\n",
                manifest.ratios[0], manifest.ratios[1], manifest.ratios[2]);
  out << buf;
  out << "# classes=";
  for (size_t i = 0; i < manifest.class_names.size(); ++i) {
    if (i) out << ",";
    out << manifest.class_names[i];
  }
  out << "\n";
  out << "path\tclass_id\tspecies\tsplit\n";
  for (const auto& e : manifest.entries) {
    out << e.path << "\t" << e.class_id << "\t" << species_name(e.species)
        << "\t" << split_name(e.split) << "\n";
  }
}

SplitManifest read_manifest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read manifest: " + path);
  SplitManifest manifest;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = line.substr(2, eq - 2);
      const std::string value = line.substr(eq + 1);
      if (key == "seed") {
        manifest.seed = std::stoull(value);
      } else if (key == "ratios") {
        std::istringstream ss(value);
        std::string tok;
        for (int i = 0; i < 3 && std::getline(ss, tok, ','); ++i) {
          manifest.ratios[i] = std::stod(tok);
        }
      } else if (key == "classes") {
        manifest.class_names.clear();
        std::istringstream ss(value);
        std::string tok;
        while (std::getline(ss, tok, ',')) manifest.class_names.push_back(tok);
      }
      continue;
    }
    if (!header_seen) {  // column header row
      header_seen = true;
      continue;
    }
    std::istringstream ss(line);
    ManifestEntry e;
    std::string class_id, species, split;
    if (!std::getline(ss, e.path, '\t') || !std::getline(ss, class_id, '\t') ||
        !std::getline(ss, species, '\t') || !std::getline(ss, split, '\t')) {
      throw std::runtime_error("malformed manifest row: " + line);
    }
    e.class_id = std::stoi(class_id);
    e.species = species_from_name(species);
    e.split = split_from_name(split);
    manifest.entries.push_back(std::move(e));
  }
  if (manifest.class_names.empty()) {
    manifest.class_names = default_class_names();
  }
  return manifest;
}

std::string mask_path_for(const std::string& image_path) {
  const std::string suffix = "_img.png";
  if (image_path.size() < suffix.size() ||
      image_path.substr(image_path.size() - suffix.size()) != suffix) {
    throw std::invalid_argument("not an image path: " + image_path);
  }
  return image_path.substr(0, image_path.size() - suffix.size()) +
         "_mask.png";
}

LabeledPatch load_patch(const std::string& root, const ManifestEntry& entry,
                        const SpeciesProfile& profile, int num_classes,
                        AccessLog* log) {
  const fs::path img = fs::path(root) / entry.path;
  const fs::path msk = fs::path(root) / mask_path_for(entry.path);
  return ingest_patch(img.string(), msk.string(), entry.class_id, num_classes,
                      entry.species, profile, log);
}

}  // namespace glam::data
