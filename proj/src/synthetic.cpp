#include "glam/data/synthetic.hpp"

#include <cmath>
#include <filesystem>
#include <stdexcept>

#include "glam/core/rng.hpp"
#include "glam/data/ingest.hpp"
#include "glam/data/png_io.hpp"

namespace fs = std::filesystem;

namespace glam::data {

ShapeSpec default_shape_for_class(int class_index) {
  ShapeSpec s;
  using F = ShapeSpec::Family;
  switch (class_index % 6) {
    case 0: s.family = F::disc; break;     // GS: solid sclerotic mass
    case 1: s.family = F::ring; break;     // HN: thin rim deposit
    case 2: s.family = F::bars; break;     // ML: washed-out streaks
    case 3: s.family = F::ellipse; break;  // MA: ballooned capillary
    case 4: s.family = F::blobs; break;    // NS: nodule cluster
    default: s.family = F::wedge; break;   // SS: segmental wedge
  }
  return s;
}

namespace {

struct Appearance {
  double fg_gray = 0.75;
  double bg_gray = 0.30;
  std::array<double, 3> tint = {1.0, 1.0, 1.0};
};

// Mouse keeps a fixed look; the human look slides away from it as
// species_shift grows, up to inverted foreground/background contrast.
Appearance appearance_for(Species s, double shift) {
  Appearance a;
  if (s == Species::mouse) {
    a.fg_gray = 0.75;
    a.bg_gray = 0.30;
    a.tint = {0.70, 0.60, 0.95};
    return a;
  }
  a.fg_gray = 0.75 + (0.30 - 0.75) * shift;
  a.bg_gray = 0.30 + (0.72 - 0.30) * shift;
  a.tint = {0.70 + (0.95 - 0.70) * shift, 0.60, 0.95 + (0.65 - 0.95) * shift};
  return a;
}

void fill_disc(MaskGrid& m, double cy, double cx, double r) {
  const int size = static_cast<int>(m.rows());
  const double r2 = r * r;
  for (int y = 0; y < size; ++y)
    for (int x = 0; x < size; ++x) {
      const double dy = y + 0.5 - cy, dx = x + 0.5 - cx;
      if (dy * dy + dx * dx <= r2) m(y, x) = 1;
    }
}

}  // namespace

MaskGrid rasterize_shape(const ShapeSpec& shape, int size, std::uint64_t seed) {
  Rng rng(seed);
  MaskGrid m = MaskGrid::Zero(size, size);
  const double r =
      rng.uniform(shape.min_radius_frac, shape.max_radius_frac) * size;
  const double cy = rng.uniform(0.32, 0.68) * size;
  const double cx = rng.uniform(0.32, 0.68) * size;
  using F = ShapeSpec::Family;
  switch (shape.family) {
    case F::disc:
      fill_disc(m, cy, cx, r);
      break;
    case F::ring: {
      const double inner = r * rng.uniform(0.55, 0.72);
      const double r2 = r * r, i2 = inner * inner;
      for (int y = 0; y < size; ++y)
        for (int x = 0; x < size; ++x) {
          const double dy = y + 0.5 - cy, dx = x + 0.5 - cx;
          const double d2 = dy * dy + dx * dx;
          if (d2 <= r2 && d2 >= i2) m(y, x) = 1;
        }
      break;
    }
    case F::bars: {
      const double theta = rng.uniform(0.0, M_PI);
      const double ct = std::cos(theta), st = std::sin(theta);
      const int bars = 2 + static_cast<int>(rng.below(2));
      const double half_w = std::max(1.2, r * 0.16);
      const double half_len = r;
      const double gap = std::max(3.0, r * 0.55);
      for (int y = 0; y < size; ++y)
        for (int x = 0; x < size; ++x) {
          const double dy = y + 0.5 - cy, dx = x + 0.5 - cx;
          const double along = dx * ct + dy * st;
          const double across = -dx * st + dy * ct;
          for (int b = 0; b < bars; ++b) {
            const double offset = (b - (bars - 1) * 0.5) * gap;
            if (std::abs(along) <= half_len &&
                std::abs(across - offset) <= half_w) {
              m(y, x) = 1;
            }
          }
        }
      break;
    }
    case F::ellipse: {
      const double a = r, b = r * rng.uniform(0.45, 0.75);
      const double theta = rng.uniform(0.0, M_PI);
      const double ct = std::cos(theta), st = std::sin(theta);
      for (int y = 0; y < size; ++y)
        for (int x = 0; x < size; ++x) {
          const double dy = y + 0.5 - cy, dx = x + 0.5 - cx;
          const double u = (dx * ct + dy * st) / a;
          const double v = (-dx * st + dy * ct) / b;
          if (u * u + v * v <= 1.0) m(y, x) = 1;
        }
      break;
    }
    case F::blobs: {
      const int blobs = 3 + static_cast<int>(rng.below(3));
      for (int b = 0; b < blobs; ++b) {
        const double by = cy + rng.uniform(-0.7, 0.7) * r;
        const double bx = cx + rng.uniform(-0.7, 0.7) * r;
        fill_disc(m, by, bx, r * rng.uniform(0.35, 0.55));
      }
      break;
    }
    case F::wedge: {
      const double theta = rng.uniform(0.0, 2.0 * M_PI);
      const double ny = std::sin(theta), nx = std::cos(theta);
      const double r2 = r * r;
      for (int y = 0; y < size; ++y)
        for (int x = 0; x < size; ++x) {
          const double dy = y + 0.5 - cy, dx = x + 0.5 - cx;
          if (dy * dy + dx * dx <= r2 && dy * ny + dx * nx >= 0.0) m(y, x) = 1;
        }
      break;
    }
  }
  if ((m != 0).count() == 0) {
    // Degenerate draw (possible for very small radii); fall back to a disc
    // so the non-empty mask invariant always holds.
    fill_disc(m, size * 0.5, size * 0.5, std::max(3.0, size * 0.1));
  }
  return m;
}

SplitManifest generate_synthetic_dataset(const SyntheticSpec& spec,
                                         const std::string& out_root) {
  if (spec.num_classes < 1) {
    throw std::invalid_argument("synthetic spec: num_classes must be >= 1");
  }
  if (spec.image_size < 16) {
    throw std::invalid_argument("synthetic spec: image_size must be >= 16");
  }
  std::vector<std::string> class_names = spec.class_names;
  if (class_names.empty()) {
    const auto& canonical = default_class_names();
    for (int i = 0; i < spec.num_classes; ++i) {
      class_names.push_back(i < int(canonical.size())
                                ? canonical[i]
                                : "C" + std::to_string(i + 1));
    }
  }
  if (int(class_names.size()) != spec.num_classes) {
    throw std::invalid_argument(
        "synthetic spec: class_names size does not match num_classes");
  }
  std::vector<ShapeSpec> shapes = spec.shapes;
  if (shapes.empty()) {
    for (int i = 0; i < spec.num_classes; ++i)
      shapes.push_back(default_shape_for_class(i));
  }
  if (int(shapes.size()) != spec.num_classes) {
    throw std::invalid_argument(
        "synthetic spec: shapes size does not match num_classes");
  }

  SplitManifest manifest;
  manifest.seed = spec.seed;
  manifest.class_names = class_names;
  const int per_class = spec.patches_train + spec.patches_val + spec.patches_test;
  const int size = spec.image_size;

  for (Species species : spec.species) {
    const Appearance look = appearance_for(species, spec.species_shift);
    for (int ci = 0; ci < spec.num_classes; ++ci) {
      const fs::path dir =
          fs::path(out_root) / species_name(species) / class_names[ci];
      fs::create_directories(dir);
      for (int j = 0; j < per_class; ++j) {
        const std::string tag = std::string(species_name(species)) + "/" +
                                class_names[ci] + "/" + std::to_string(j);
        const std::uint64_t patch_seed = derive_seed(spec.seed, tag);
        const MaskGrid mask = rasterize_shape(shapes[ci], size, patch_seed);

        Rng rng(derive_seed(patch_seed, "texture"));
        ImageU8 img;
        img.height = size;
        img.width = size;
        img.channels = 3;
        img.pixels.resize(size_t(size) * size * 3);
        for (int y = 0; y < size; ++y) {
          for (int x = 0; x < size; ++x) {
            const double base = mask(y, x) ? look.fg_gray : look.bg_gray;
            const double gray = base + rng.normal() * spec.noise_level;
            for (int c = 0; c < 3; ++c) {
              double v = gray * look.tint[c] + rng.normal() * spec.noise_level * 0.5;
              v = std::min(std::max(v, 0.0), 1.0);
              img.pixels[(size_t(y) * size + x) * 3 + c] =
                  static_cast<std::uint8_t>(std::lround(v * 255.0));
            }
          }
        }

        char idbuf[16];
        std::snprintf(idbuf, sizeof(idbuf), "%04d", j);
        const std::string stem = idbuf;
        write_png((dir / (stem + "_img.png")).string(), img);

        ImageU8 mimg;
        mimg.height = size;
        mimg.width = size;
        mimg.channels = 1;
        mimg.pixels.resize(size_t(size) * size);
        for (int y = 0; y < size; ++y)
          for (int x = 0; x < size; ++x)
            mimg.pixels[size_t(y) * size + x] = mask(y, x) ? 255 : 0;
        write_png((dir / (stem + "_mask.png")).string(), mimg);

        ManifestEntry entry;
        entry.path = (fs::path(species_name(species)) / class_names[ci] /
                      (stem + "_img.png"))
                         .generic_string();
        entry.class_id = ci + 1;
        entry.species = species;
        entry.split = j < spec.patches_train ? Split::train
                      : j < spec.patches_train + spec.patches_val
                          ? Split::val
                          : Split::test;
        manifest.entries.push_back(std::move(entry));
      }
    }
  }
  write_manifest(manifest, (fs::path(out_root) / "manifest.tsv").string());
  return manifest;
}

}  // namespace glam::data
