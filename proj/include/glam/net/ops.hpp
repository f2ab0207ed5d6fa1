#pragma once

#include <algorithm>
#include <stdexcept>

#include "glam/net/feature_map.hpp"

namespace glam::net {

// 3x3 convolutions run as strip-wise im2col + GEMM. The column layout is
// col(p, k * c_in + ci) with k = (dy + 1) * 3 + (dx + 1), matching weight
// matrices of shape (c_in * 9) x c_out. Zero padding, stride 1.
//
// All backward functions accumulate (+=) into their gradient outputs.

namespace detail {

inline int strip_rows_for(int width) {
  constexpr int target_pixels = 16384;
  return std::max(1, target_pixels / std::max(1, width));
}

// Fills `col` (strip_pixels x c_in*9) for rows [y0, y1).
template <typename Scalar>
void im2col_strip(const FeatureMap<Scalar>& in, int y0, int y1,
                  MatrixX<Scalar>& col) {
  const int w = in.width;
  const int h = in.height;
  const Eigen::Index c_in = in.data.cols();
  col.setZero();
  for (int k = 0; k < 9; ++k) {
    const int dy = k / 3 - 1;
    const int dx = k % 3 - 1;
    const int x_lo = std::max(0, -dx);
    const int x_hi = std::min(w, w - dx);
    if (x_lo >= x_hi) continue;
    for (int y = y0; y < y1; ++y) {
      const int sy = y + dy;
      if (sy < 0 || sy >= h) continue;
      const Eigen::Index dst = Eigen::Index(y - y0) * w + x_lo;
      const Eigen::Index src = Eigen::Index(sy) * w + x_lo + dx;
      col.block(dst, Eigen::Index(k) * c_in, x_hi - x_lo, c_in) =
          in.data.block(src, 0, x_hi - x_lo, c_in);
    }
  }
}

// Scatter-add of a column-gradient strip back onto the input map.
template <typename Scalar>
void col2im_strip(const MatrixX<Scalar>& d_col, int y0, int y1,
                  FeatureMap<Scalar>& d_in) {
  const int w = d_in.width;
  const int h = d_in.height;
  const Eigen::Index c_in = d_in.data.cols();
  for (int k = 0; k < 9; ++k) {
    const int dy = k / 3 - 1;
    const int dx = k % 3 - 1;
    const int x_lo = std::max(0, -dx);
    const int x_hi = std::min(w, w - dx);
    if (x_lo >= x_hi) continue;
    for (int y = y0; y < y1; ++y) {
      const int sy = y + dy;
      if (sy < 0 || sy >= h) continue;
      const Eigen::Index dst = Eigen::Index(y - y0) * w + x_lo;
      const Eigen::Index src = Eigen::Index(sy) * w + x_lo + dx;
      d_in.data.block(src, 0, x_hi - x_lo, c_in) +=
          d_col.block(dst, Eigen::Index(k) * c_in, x_hi - x_lo, c_in);
    }
  }
}

}  // namespace detail

template <typename Scalar>
void conv3x3_forward(const FeatureMap<Scalar>& in, const MatrixX<Scalar>& weight,
                     const MatrixX<Scalar>& bias, FeatureMap<Scalar>& out) {
  const Eigen::Index c_in = in.data.cols();
  const Eigen::Index c_out = weight.cols();
  if (weight.rows() != c_in * 9) {
    throw std::invalid_argument("conv3x3: weight/input channel mismatch");
  }
  out.height = in.height;
  out.width = in.width;
  out.data.resize(in.pixels(), c_out);
  const int strip = detail::strip_rows_for(in.width);
  MatrixX<Scalar> col(Eigen::Index(strip) * in.width, c_in * 9);
  for (int y0 = 0; y0 < in.height; y0 += strip) {
    const int y1 = std::min(in.height, y0 + strip);
    const Eigen::Index px = Eigen::Index(y1 - y0) * in.width;
    if (px != col.rows()) col.resize(px, c_in * 9);
    detail::im2col_strip(in, y0, y1, col);
    out.data.block(Eigen::Index(y0) * in.width, 0, px, c_out).noalias() =
        col * weight;
  }
  out.data.rowwise() += bias.col(0).transpose();
}

template <typename Scalar>
void conv3x3_backward(const FeatureMap<Scalar>& in, const MatrixX<Scalar>& weight,
                      const FeatureMap<Scalar>& d_out, FeatureMap<Scalar>& d_in,
                      MatrixX<Scalar>& d_weight, MatrixX<Scalar>& d_bias) {
  const Eigen::Index c_in = in.data.cols();
  const Eigen::Index c_out = weight.cols();
  d_bias.col(0) += d_out.data.colwise().sum().transpose();
  const int strip = detail::strip_rows_for(in.width);
  MatrixX<Scalar> col(Eigen::Index(strip) * in.width, c_in * 9);
  MatrixX<Scalar> d_col(Eigen::Index(strip) * in.width, c_in * 9);
  for (int y0 = 0; y0 < in.height; y0 += strip) {
    const int y1 = std::min(in.height, y0 + strip);
    const Eigen::Index px = Eigen::Index(y1 - y0) * in.width;
    if (px != col.rows()) {
      col.resize(px, c_in * 9);
      d_col.resize(px, c_in * 9);
    }
    detail::im2col_strip(in, y0, y1, col);
    const auto d_out_strip =
        d_out.data.block(Eigen::Index(y0) * in.width, 0, px, c_out);
    d_weight.noalias() += col.transpose() * d_out_strip;
    d_col.noalias() = d_out_strip * weight.transpose();
    detail::col2im_strip(d_col, y0, y1, d_in);
  }
}

template <typename Scalar>
void conv1x1_forward(const FeatureMap<Scalar>& in, const MatrixX<Scalar>& weight,
                     const MatrixX<Scalar>& bias, FeatureMap<Scalar>& out) {
  if (weight.rows() != in.data.cols()) {
    throw std::invalid_argument("conv1x1: weight/input channel mismatch");
  }
  out.height = in.height;
  out.width = in.width;
  out.data.noalias() = in.data * weight;
  out.data.rowwise() += bias.col(0).transpose();
}

template <typename Scalar>
void conv1x1_backward(const FeatureMap<Scalar>& in, const MatrixX<Scalar>& weight,
                      const FeatureMap<Scalar>& d_out, FeatureMap<Scalar>& d_in,
                      MatrixX<Scalar>& d_weight, MatrixX<Scalar>& d_bias) {
  d_bias.col(0) += d_out.data.colwise().sum().transpose();
  d_weight.noalias() += in.data.transpose() * d_out.data;
  d_in.data.noalias() += d_out.data * weight.transpose();
}

using PoolArgmax = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
void maxpool2x2_forward(const FeatureMap<Scalar>& in, FeatureMap<Scalar>& out,
                        PoolArgmax& argmax) {
  if (in.height % 2 != 0 || in.width % 2 != 0) {
    throw std::invalid_argument("maxpool2x2: spatial size must be even");
  }
  const int oh = in.height / 2, ow = in.width / 2;
  const Eigen::Index channels = in.data.cols();
  out.height = oh;
  out.width = ow;
  out.data.resize(Eigen::Index(oh) * ow, channels);
  argmax.resize(Eigen::Index(oh) * ow, channels);
  for (Eigen::Index c = 0; c < channels; ++c) {
    for (int oy = 0; oy < oh; ++oy) {
      for (int ox = 0; ox < ow; ++ox) {
        const Eigen::Index op = Eigen::Index(oy) * ow + ox;
        Scalar best{};
        std::uint8_t code = 0;
        for (int k = 0; k < 4; ++k) {
          const Eigen::Index ip =
              Eigen::Index(2 * oy + (k >> 1)) * in.width + 2 * ox + (k & 1);
          const Scalar v = in.data(ip, c);
          if (k == 0 || v > best) {
            best = v;
            code = static_cast<std::uint8_t>(k);
          }
        }
        out.data(op, c) = best;
        argmax(op, c) = code;
      }
    }
  }
}

template <typename Scalar>
void maxpool2x2_backward(const FeatureMap<Scalar>& d_out,
                         const PoolArgmax& argmax, FeatureMap<Scalar>& d_in) {
  const int ow = d_out.width;
  const Eigen::Index channels = d_out.data.cols();
  for (Eigen::Index c = 0; c < channels; ++c) {
    for (int oy = 0; oy < d_out.height; ++oy) {
      for (int ox = 0; ox < ow; ++ox) {
        const Eigen::Index op = Eigen::Index(oy) * ow + ox;
        const int k = argmax(op, c);
        const Eigen::Index ip =
            Eigen::Index(2 * oy + (k >> 1)) * d_in.width + 2 * ox + (k & 1);
        d_in.data(ip, c) += d_out.data(op, c);
      }
    }
  }
}

// Transposed 2x2 stride-2 convolution (the kernel tiles the output exactly,
// so every output pixel receives one contribution). Weight layout:
// (c_in) x (4 * c_out) with column index k * c_out + co, k = dy * 2 + dx.
template <typename Scalar>
void tconv2x2_forward(const FeatureMap<Scalar>& in, const MatrixX<Scalar>& weight,
                      const MatrixX<Scalar>& bias, FeatureMap<Scalar>& out) {
  if (weight.rows() != in.data.cols()) {
    throw std::invalid_argument("tconv2x2: weight/input channel mismatch");
  }
  const Eigen::Index c_out = weight.cols() / 4;
  const int oh = in.height * 2, ow = in.width * 2;
  MatrixX<Scalar> spread(in.pixels(), weight.cols());
  spread.noalias() = in.data * weight;
  out.height = oh;
  out.width = ow;
  out.data.resize(Eigen::Index(oh) * ow, c_out);
  for (int k = 0; k < 4; ++k) {
    const int dy = k >> 1, dx = k & 1;
    for (Eigen::Index co = 0; co < c_out; ++co) {
      const Scalar* src = spread.col(Eigen::Index(k) * c_out + co).data();
      Scalar* dst = out.data.col(co).data();
      for (int y = 0; y < in.height; ++y) {
        Scalar* drow = dst + Eigen::Index(2 * y + dy) * ow + dx;
        const Scalar* srow = src + Eigen::Index(y) * in.width;
        for (int x = 0; x < in.width; ++x) drow[2 * x] = srow[x];
      }
    }
  }
  out.data.rowwise() += bias.col(0).transpose();
}

template <typename Scalar>
void tconv2x2_backward(const FeatureMap<Scalar>& in, const MatrixX<Scalar>& weight,
                       const FeatureMap<Scalar>& d_out, FeatureMap<Scalar>& d_in,
                       MatrixX<Scalar>& d_weight, MatrixX<Scalar>& d_bias) {
  const Eigen::Index c_out = weight.cols() / 4;
  const int ow = d_out.width;
  d_bias.col(0) += d_out.data.colwise().sum().transpose();
  MatrixX<Scalar> d_spread(in.pixels(), weight.cols());
  for (int k = 0; k < 4; ++k) {
    const int dy = k >> 1, dx = k & 1;
    for (Eigen::Index co = 0; co < c_out; ++co) {
      Scalar* dst = d_spread.col(Eigen::Index(k) * c_out + co).data();
      const Scalar* src = d_out.data.col(co).data();
      for (int y = 0; y < in.height; ++y) {
        const Scalar* srow = src + Eigen::Index(2 * y + dy) * ow + dx;
        Scalar* drow = dst + Eigen::Index(y) * in.width;
        for (int x = 0; x < in.width; ++x) drow[x] = srow[2 * x];
      }
    }
  }
  d_weight.noalias() += in.data.transpose() * d_spread;
  d_in.data.noalias() += d_spread * weight.transpose();
}

template <typename Scalar>
void relu_forward(const FeatureMap<Scalar>& in, FeatureMap<Scalar>& out) {
  out.height = in.height;
  out.width = in.width;
  out.data = in.data.cwiseMax(Scalar(0));
}

// d_in += d_out ⊙ [pre > 0]
template <typename Scalar>
void relu_backward(const FeatureMap<Scalar>& pre, const FeatureMap<Scalar>& d_out,
                   FeatureMap<Scalar>& d_in) {
  d_in.data.array() +=
      d_out.data.array() * (pre.data.array() > Scalar(0)).template cast<Scalar>();
}

// Per-channel spatial mean.
template <typename Scalar>
VectorX<Scalar> global_average_pool(const FeatureMap<Scalar>& in) {
  if (in.pixels() == 0) {
    throw std::invalid_argument("global_average_pool: empty feature map");
  }
  return in.data.colwise().mean().transpose();
}

template <typename Scalar>
void global_average_pool_backward(const VectorX<Scalar>& d_pooled,
                                  FeatureMap<Scalar>& d_in) {
  d_in.data.rowwise() +=
      (d_pooled / Scalar(d_in.pixels())).transpose();
}

template <typename Scalar>
void concat_channels(const FeatureMap<Scalar>& a, const FeatureMap<Scalar>& b,
                     FeatureMap<Scalar>& out) {
  if (a.height != b.height || a.width != b.width) {
    throw std::invalid_argument("concat: spatial size mismatch");
  }
  out.height = a.height;
  out.width = a.width;
  out.data.resize(a.pixels(), a.data.cols() + b.data.cols());
  out.data.leftCols(a.data.cols()) = a.data;
  out.data.rightCols(b.data.cols()) = b.data;
}

}  // namespace glam::net
