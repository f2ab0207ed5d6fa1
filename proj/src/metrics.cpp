#include "glam/metrics/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace glam::metrics {

namespace {

constexpr double kFar = 1e20;  // finite sentinel, keeps the DT free of inf-inf

void check_pair(const BinaryMask& a, const BinaryMask& b) {
  if (a.grid.rows() != b.grid.rows() || a.grid.cols() != b.grid.cols()) {
    throw std::invalid_argument("mask shape mismatch");
  }
  if (a.spacing_um != b.spacing_um) {
    throw std::invalid_argument("mask spacing mismatch");
  }
  if (a.spacing_um <= 0.0) {
    throw std::invalid_argument("spacing_um must be positive");
  }
}

// 1D squared distance transform along one row of parabolas.
void dt_1d(const double* f, int n, double* d, int* v, double* z) {
  int k = 0;
  v[0] = 0;
  z[0] = -kFar;
  z[1] = kFar;
  for (int q = 1; q < n; ++q) {
    double s = ((f[q] + double(q) * q) - (f[v[k]] + double(v[k]) * v[k])) /
               (2.0 * q - 2.0 * v[k]);
    while (s <= z[k]) {
      --k;
      s = ((f[q] + double(q) * q) - (f[v[k]] + double(v[k]) * v[k])) /
          (2.0 * q - 2.0 * v[k]);
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = kFar;
  }
  k = 0;
  for (int q = 0; q < n; ++q) {
    while (z[k + 1] < q) ++k;
    const double dq = double(q) - v[k];
    d[q] = dq * dq + f[v[k]];
  }
}

}  // namespace

double dice(const BinaryMask& pred, const BinaryMask& gt) {
  check_pair(pred, gt);
  long long np = 0, ng = 0, inter = 0;
  const auto rows = pred.grid.rows();
  const auto cols = pred.grid.cols();
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) {
      const bool p = pred.grid(r, c) != 0;
      const bool g = gt.grid(r, c) != 0;
      np += p;
      ng += g;
      inter += p && g;
    }
  }
  if (np == 0 && ng == 0) return 1.0;
  if (np == 0 || ng == 0) return 0.0;
  return 2.0 * double(inter) / double(np + ng);
}

std::vector<PixelPoint> extract_surface(const MaskGrid& mask) {
  std::vector<PixelPoint> out;
  const int h = static_cast<int>(mask.rows());
  const int w = static_cast<int>(mask.cols());
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      if (mask(r, c) == 0) continue;
      const bool border = r == 0 || c == 0 || r == h - 1 || c == w - 1;
      if (border || mask(r - 1, c) == 0 || mask(r + 1, c) == 0 ||
          mask(r, c - 1) == 0 || mask(r, c + 1) == 0) {
        out.push_back({r, c});
      }
    }
  }
  return out;
}

ArrayXX<double> squared_distance_transform(const MaskGrid& sites) {
  const int h = static_cast<int>(sites.rows());
  const int w = static_cast<int>(sites.cols());
  ArrayXX<double> d(h, w);
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c) d(r, c) = sites(r, c) != 0 ? 0.0 : kFar;

  const int n = std::max(h, w);
  std::vector<double> f(n), row(n), z(n + 1);
  std::vector<int> v(n);

  // Columns first, then rows.
  for (int c = 0; c < w; ++c) {
    for (int r = 0; r < h; ++r) f[r] = d(r, c);
    dt_1d(f.data(), h, row.data(), v.data(), z.data());
    for (int r = 0; r < h; ++r) d(r, c) = row[r];
  }
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) f[c] = d(r, c);
    dt_1d(f.data(), w, row.data(), v.data(), z.data());
    for (int c = 0; c < w; ++c) d(r, c) = row[c];
  }
  return d;
}

double empty_surface_fallback_um(int height, int width, double spacing_um) {
  return std::sqrt(double(height) * height + double(width) * width) *
         spacing_um;
}

SurfaceMetrics surface_metrics(const BinaryMask& pred, const BinaryMask& gt) {
  check_pair(pred, gt);
  const auto sp = extract_surface(pred.grid);
  const auto sg = extract_surface(gt.grid);
  SurfaceMetrics m;
  if (sp.empty() && sg.empty()) return m;
  if (sp.empty() || sg.empty()) {
    const double fb =
        empty_surface_fallback_um(pred.height(), pred.width(), pred.spacing_um);
    m.hausdorff_um = fb;
    m.mean_surface_um = fb;
    return m;
  }

  MaskGrid psites = MaskGrid::Zero(pred.grid.rows(), pred.grid.cols());
  MaskGrid gsites = MaskGrid::Zero(gt.grid.rows(), gt.grid.cols());
  for (const auto& p : sp) psites(p.row, p.col) = 1;
  for (const auto& g : sg) gsites(g.row, g.col) = 1;
  const ArrayXX<double> dist_to_g = squared_distance_transform(gsites);
  const ArrayXX<double> dist_to_p = squared_distance_transform(psites);

  double max_d = 0.0, sum_d = 0.0;
  for (const auto& p : sp) {
    const double d = std::sqrt(dist_to_g(p.row, p.col));
    max_d = std::max(max_d, d);
    sum_d += d;
  }
  for (const auto& g : sg) {
    const double d = std::sqrt(dist_to_p(g.row, g.col));
    max_d = std::max(max_d, d);
    sum_d += d;
  }
  m.hausdorff_um = max_d * pred.spacing_um;
  m.mean_surface_um =
      sum_d / double(sp.size() + sg.size()) * pred.spacing_um;
  return m;
}

double hausdorff(const BinaryMask& pred, const BinaryMask& gt) {
  return surface_metrics(pred, gt).hausdorff_um;
}

double mean_surface_distance(const BinaryMask& pred, const BinaryMask& gt) {
  return surface_metrics(pred, gt).mean_surface_um;
}

SurfaceMetrics surface_metrics_bruteforce(const BinaryMask& pred,
                                          const BinaryMask& gt) {
  check_pair(pred, gt);
  const auto sp = extract_surface(pred.grid);
  const auto sg = extract_surface(gt.grid);
  SurfaceMetrics m;
  if (sp.empty() && sg.empty()) return m;
  if (sp.empty() || sg.empty()) {
    const double fb =
        empty_surface_fallback_um(pred.height(), pred.width(), pred.spacing_um);
    m.hausdorff_um = fb;
    m.mean_surface_um = fb;
    return m;
  }
  auto nearest = [](const PixelPoint& a, const std::vector<PixelPoint>& bs) {
    double best = std::numeric_limits<double>::max();
    for (const auto& b : bs) {
      const double dr = double(a.row) - b.row;
      const double dc = double(a.col) - b.col;
      best = std::min(best, dr * dr + dc * dc);
    }
    return std::sqrt(best);
  };
  double max_d = 0.0, sum_d = 0.0;
  for (const auto& p : sp) {
    const double d = nearest(p, sg);
    max_d = std::max(max_d, d);
    sum_d += d;
  }
  for (const auto& g : sg) {
    const double d = nearest(g, sp);
    max_d = std::max(max_d, d);
    sum_d += d;
  }
  m.hausdorff_um = max_d * pred.spacing_um;
  m.mean_surface_um =
      sum_d / double(sp.size() + sg.size()) * pred.spacing_um;
  return m;
}

}  // namespace glam::metrics
