#pragma once

#include <cmath>
#include <stdexcept>

#include "glam/core/types.hpp"

namespace glam::data {

// Bilinear resize of a multi-channel plane stack stored as (h*w) x channels.
// Output pixel centers are mapped into source coordinates with the usual
// half-pixel convention, so an identity-size resize reproduces the input
// pixel-exactly.
template <typename Scalar>
MatrixX<Scalar> resize_bilinear(const MatrixX<Scalar>& src, int src_h,
                                int src_w, int dst_h, int dst_w) {
  if (src.rows() != Eigen::Index(src_h) * src_w) {
    throw std::invalid_argument("resize_bilinear: source shape mismatch");
  }
  const auto channels = src.cols();
  MatrixX<Scalar> dst(Eigen::Index(dst_h) * dst_w, channels);
  const double sy = double(src_h) / double(dst_h);
  const double sx = double(src_w) / double(dst_w);
  for (int y = 0; y < dst_h; ++y) {
    double fy = (y + 0.5) * sy - 0.5;
    fy = std::min(std::max(fy, 0.0), double(src_h - 1));
    const int y0 = static_cast<int>(fy);
    const int y1 = std::min(y0 + 1, src_h - 1);
    const double wy = fy - y0;
    for (int x = 0; x < dst_w; ++x) {
      double fx = (x + 0.5) * sx - 0.5;
      fx = std::min(std::max(fx, 0.0), double(src_w - 1));
      const int x0 = static_cast<int>(fx);
      const int x1 = std::min(x0 + 1, src_w - 1);
      const double wx = fx - x0;
      const Eigen::Index o = Eigen::Index(y) * dst_w + x;
      for (Eigen::Index c = 0; c < channels; ++c) {
        const double v00 = src(Eigen::Index(y0) * src_w + x0, c);
        const double v01 = src(Eigen::Index(y0) * src_w + x1, c);
        const double v10 = src(Eigen::Index(y1) * src_w + x0, c);
        const double v11 = src(Eigen::Index(y1) * src_w + x1, c);
        const double top = v00 + (v01 - v00) * wx;
        const double bot = v10 + (v11 - v10) * wx;
        dst(o, c) = static_cast<Scalar>(top + (bot - top) * wy);
      }
    }
  }
  return dst;
}

// Nearest-neighbour resize for label grids. Output values are a subset of the
// input values, so binary masks stay binary.
inline MaskGrid resize_nearest(const MaskGrid& src, int dst_h, int dst_w) {
  const int src_h = static_cast<int>(src.rows());
  const int src_w = static_cast<int>(src.cols());
  MaskGrid dst(dst_h, dst_w);
  const double sy = double(src_h) / double(dst_h);
  const double sx = double(src_w) / double(dst_w);
  for (int y = 0; y < dst_h; ++y) {
    int yy = static_cast<int>((y + 0.5) * sy);
    yy = std::min(std::max(yy, 0), src_h - 1);
    for (int x = 0; x < dst_w; ++x) {
      int xx = static_cast<int>((x + 0.5) * sx);
      xx = std::min(std::max(xx, 0), src_w - 1);
      dst(y, x) = src(yy, xx);
    }
  }
  return dst;
}

}  // namespace glam::data
