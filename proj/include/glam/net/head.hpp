#pragma once

#include "glam/net/kernels.hpp"
#include "glam/net/ops.hpp"

namespace glam::net {

// Three successive 1x1 convolutions over the decoded map, with rectifiers
// after the first two layers. Output is a single-channel logits map at the
// decoded map's spatial size.
template <typename Scalar>
struct HeadTape {
  MatrixX<Scalar> pre1;  // hw x ch, pre-rectifier
  MatrixX<Scalar> pre2;  // hw x ch
};

template <typename Scalar>
VectorX<Scalar> apply_dynamic_head(const FeatureMap<Scalar>& decoded,
                                   const DynamicKernels<Scalar>& k,
                                   HeadTape<Scalar>* tape = nullptr) {
  if (decoded.data.cols() != k.layer1_w.rows()) {
    throw std::invalid_argument("apply_dynamic_head: channel mismatch");
  }
  MatrixX<Scalar> pre1 = decoded.data * k.layer1_w;
  pre1.rowwise() += k.layer1_b.transpose();
  const MatrixX<Scalar> act1 = pre1.cwiseMax(Scalar(0));

  MatrixX<Scalar> pre2 = act1 * k.layer2_w;
  pre2.rowwise() += k.layer2_b.transpose();
  const MatrixX<Scalar> act2 = pre2.cwiseMax(Scalar(0));

  VectorX<Scalar> logits = act2 * k.layer3_w;
  logits.array() += k.layer3_b;
  if (tape) {
    tape->pre1 = std::move(pre1);
    tape->pre2 = std::move(pre2);
  }
  return logits;
}

// Backward through the head. Accumulates the gradient w.r.t. the decoded map
// into d_decoded (which must be pre-sized) and returns the gradient w.r.t.
// the kernels.
template <typename Scalar>
DynamicKernels<Scalar> dynamic_head_backward(const FeatureMap<Scalar>& decoded,
                                             const DynamicKernels<Scalar>& k,
                                             const HeadTape<Scalar>& tape,
                                             const VectorX<Scalar>& d_logits,
                                             FeatureMap<Scalar>& d_decoded) {
  const MatrixX<Scalar> act1 = tape.pre1.cwiseMax(Scalar(0));
  const MatrixX<Scalar> act2 = tape.pre2.cwiseMax(Scalar(0));

  DynamicKernels<Scalar> g;
  g.layer3_b = d_logits.sum();
  g.layer3_w = act2.transpose() * d_logits;

  MatrixX<Scalar> d_act2 = d_logits * k.layer3_w.transpose();
  const MatrixX<Scalar> d_pre2 =
      (d_act2.array() * (tape.pre2.array() > Scalar(0)).template cast<Scalar>())
          .matrix();
  g.layer2_w = act1.transpose() * d_pre2;
  g.layer2_b = d_pre2.colwise().sum().transpose();

  MatrixX<Scalar> d_act1 = d_pre2 * k.layer2_w.transpose();
  const MatrixX<Scalar> d_pre1 =
      (d_act1.array() * (tape.pre1.array() > Scalar(0)).template cast<Scalar>())
          .matrix();
  g.layer1_w = decoded.data.transpose() * d_pre1;
  g.layer1_b = d_pre1.colwise().sum().transpose();

  d_decoded.data.noalias() += d_pre1 * k.layer1_w.transpose();
  return g;
}

}  // namespace glam::net
