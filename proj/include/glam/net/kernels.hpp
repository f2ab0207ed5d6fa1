#pragma once

#include <stdexcept>

#include "glam/core/types.hpp"

namespace glam::net {

// Weights and biases of the three 1x1 head layers, generated per
// (image, class) query by the controller. The flat layout is
//   [vec(layer1_w) | layer1_b | vec(layer2_w) | layer2_b | layer3_w | layer3_b]
// with matrices flattened column-major, so the total length is
//   W = ch*cm + ch + ch*ch + ch + ch + 1.
template <typename Scalar>
struct DynamicKernels {
  MatrixX<Scalar> layer1_w;  // cm x ch
  VectorX<Scalar> layer1_b;  // ch
  MatrixX<Scalar> layer2_w;  // ch x ch
  VectorX<Scalar> layer2_b;  // ch
  MatrixX<Scalar> layer3_w;  // ch x 1
  Scalar layer3_b{};
};

constexpr Eigen::Index kernel_width(int decoder_channels, int head_hidden) {
  const Eigen::Index cm = decoder_channels;
  const Eigen::Index ch = head_hidden;
  return ch * cm + ch + ch * ch + ch + ch + 1;
}

template <typename Scalar>
DynamicKernels<Scalar> split_kernels(const VectorX<Scalar>& flat,
                                     int decoder_channels, int head_hidden) {
  const Eigen::Index cm = decoder_channels;
  const Eigen::Index ch = head_hidden;
  if (flat.size() != kernel_width(decoder_channels, head_hidden)) {
    throw std::invalid_argument("split_kernels: flat length mismatch");
  }
  DynamicKernels<Scalar> k;
  Eigen::Index o = 0;
  k.layer1_w = Eigen::Map<const MatrixX<Scalar>>(flat.data() + o, cm, ch);
  o += cm * ch;
  k.layer1_b = flat.segment(o, ch);
  o += ch;
  k.layer2_w = Eigen::Map<const MatrixX<Scalar>>(flat.data() + o, ch, ch);
  o += ch * ch;
  k.layer2_b = flat.segment(o, ch);
  o += ch;
  k.layer3_w = flat.segment(o, ch);
  o += ch;
  k.layer3_b = flat(o);
  return k;
}

template <typename Scalar>
VectorX<Scalar> flatten_kernels(const DynamicKernels<Scalar>& k) {
  const Eigen::Index cm = k.layer1_w.rows();
  const Eigen::Index ch = k.layer1_w.cols();
  VectorX<Scalar> flat(kernel_width(int(cm), int(ch)));
  Eigen::Index o = 0;
  Eigen::Map<MatrixX<Scalar>>(flat.data() + o, cm, ch) = k.layer1_w;
  o += cm * ch;
  flat.segment(o, ch) = k.layer1_b;
  o += ch;
  Eigen::Map<MatrixX<Scalar>>(flat.data() + o, ch, ch) = k.layer2_w;
  o += ch * ch;
  flat.segment(o, ch) = k.layer2_b;
  o += ch;
  flat.segment(o, ch) = k.layer3_w;
  o += ch;
  flat(o) = k.layer3_b;
  return flat;
}

}  // namespace glam::net
