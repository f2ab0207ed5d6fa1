#pragma once

#include "glam/net/class_vector.hpp"
#include "glam/net/kernels.hpp"
#include "glam/net/ops.hpp"

namespace glam::net {

// The controller is affine: flat = weight' * (pooled || class) + bias, with
// weight of shape (c_f + m) x W and bias of length W.
template <typename Scalar>
VectorX<Scalar> controller_input(const VectorX<Scalar>& pooled,
                                 const ClassVector<Scalar>& task) {
  VectorX<Scalar> x(pooled.size() + task.values.size());
  x.head(pooled.size()) = pooled;
  x.tail(task.values.size()) = task.values;
  return x;
}

template <typename Scalar>
DynamicKernels<Scalar> generate_kernels(const VectorX<Scalar>& pooled,
                                        const ClassVector<Scalar>& task,
                                        const MatrixX<Scalar>& weight,
                                        const MatrixX<Scalar>& bias,
                                        int decoder_channels, int head_hidden) {
  if (weight.rows() != pooled.size() + task.values.size()) {
    throw std::invalid_argument("generate_kernels: controller input mismatch");
  }
  if (weight.cols() != kernel_width(decoder_channels, head_hidden)) {
    throw std::invalid_argument("generate_kernels: controller output mismatch");
  }
  const VectorX<Scalar> x = controller_input(pooled, task);
  const VectorX<Scalar> flat = weight.transpose() * x + bias.col(0);
  return split_kernels(flat, decoder_channels, head_hidden);
}

// d_flat is the gradient w.r.t. the flat kernel vector. Returns the gradient
// w.r.t. the pooled features (the class vector is a constant input).
template <typename Scalar>
VectorX<Scalar> controller_backward(const VectorX<Scalar>& pooled,
                                    const ClassVector<Scalar>& task,
                                    const MatrixX<Scalar>& weight,
                                    const VectorX<Scalar>& d_flat,
                                    MatrixX<Scalar>& d_weight,
                                    MatrixX<Scalar>& d_bias) {
  const VectorX<Scalar> x = controller_input(pooled, task);
  d_weight.noalias() += x * d_flat.transpose();
  d_bias.col(0) += d_flat;
  const VectorX<Scalar> d_x = weight * d_flat;
  return d_x.head(pooled.size());
}

}  // namespace glam::net
