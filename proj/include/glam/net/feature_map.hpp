#pragma once

#include "glam/core/types.hpp"

namespace glam::net {

// Spatial feature map stored as (h*w) x channels with pixel index
// p = row * width + col. Channel planes are therefore contiguous columns,
// which makes convolutions plain matrix products.
template <typename Scalar>
struct FeatureMap {
  MatrixX<Scalar> data;
  int height = 0;
  int width = 0;

  FeatureMap() = default;
  FeatureMap(int h, int w, int channels)
      : data(MatrixX<Scalar>::Zero(Eigen::Index(h) * w, channels)),
        height(h),
        width(w) {}

  int channels() const { return static_cast<int>(data.cols()); }
  Eigen::Index pixels() const { return data.rows(); }
};

}  // namespace glam::net
