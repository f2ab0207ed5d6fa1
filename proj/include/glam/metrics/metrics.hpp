#pragma once

#include <vector>

#include "glam/core/types.hpp"

namespace glam::metrics {

struct BinaryMask {
  MaskGrid grid;            // h x w, values in {0,1}
  double spacing_um = 1.0;  // physical size of one pixel

  int height() const { return static_cast<int>(grid.rows()); }
  int width() const { return static_cast<int>(grid.cols()); }
};

struct PixelPoint {
  int row = 0;
  int col = 0;
};

// 2|P∩G| / (|P|+|G|). Both masks empty -> 1.0, exactly one empty -> 0.0.
double dice(const BinaryMask& pred, const BinaryMask& gt);

// Foreground pixels with at least one 4-neighbour background pixel, or lying
// on the image border. Row-major order (row, then col).
std::vector<PixelPoint> extract_surface(const MaskGrid& mask);

struct SurfaceMetrics {
  double hausdorff_um = 0.0;
  double mean_surface_um = 0.0;
};

// Symmetric surface distances in microns, computed with an exact squared
// Euclidean distance transform. Either surface empty -> both values fall back
// to the image diagonal in microns; both empty -> 0.
SurfaceMetrics surface_metrics(const BinaryMask& pred, const BinaryMask& gt);

double hausdorff(const BinaryMask& pred, const BinaryMask& gt);
double mean_surface_distance(const BinaryMask& pred, const BinaryMask& gt);

// Reference implementations: O(|Sp|*|Sg|) pairwise scans over the surfaces.
// Kept independent of the distance-transform path so the two can be checked
// against each other.
SurfaceMetrics surface_metrics_bruteforce(const BinaryMask& pred,
                                          const BinaryMask& gt);

double empty_surface_fallback_um(int height, int width, double spacing_um);

// Exact squared Euclidean distance transform (Felzenszwalb-Huttenlocher) of a
// site set given as an h x w indicator (nonzero = site). Output entry (r, c)
// is the squared pixel distance to the nearest site, or a large sentinel when
// there are no sites at all.
ArrayXX<double> squared_distance_transform(const MaskGrid& sites);

}  // namespace glam::metrics
