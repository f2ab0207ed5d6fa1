#pragma once

#include <cmath>
#include <stdexcept>

#include "glam/core/types.hpp"

namespace glam::train {

// Supervision touches only the annotated class of a patch: the loss compares
// one probability map against one binary mask. Pixel-mean binary cross
// entropy plus a soft Dice term.
template <typename Scalar>
struct LossParts {
  Scalar bce{};
  Scalar soft_dice{};
  Scalar total() const { return bce + soft_dice; }
};

inline constexpr double kSoftDiceEps = 1e-5;
inline constexpr double kLogClip = 1e-7;

template <typename Scalar>
VectorX<Scalar> flatten_mask(const MaskGrid& mask) {
  const int h = static_cast<int>(mask.rows());
  const int w = static_cast<int>(mask.cols());
  VectorX<Scalar> g(Eigen::Index(h) * w);
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c)
      g(Eigen::Index(r) * w + c) = mask(r, c) ? Scalar(1) : Scalar(0);
  return g;
}

template <typename Scalar>
LossParts<Scalar> partial_loss_parts(const VectorX<Scalar>& prob,
                                     const MaskGrid& gt) {
  const Eigen::Index n = Eigen::Index(gt.rows()) * gt.cols();
  if (prob.size() != n) {
    throw std::invalid_argument("partial_loss: probability/mask shape mismatch");
  }
  const VectorX<Scalar> g = flatten_mask<Scalar>(gt);
  const auto p = prob.array()
                     .min(Scalar(1) - Scalar(kLogClip))
                     .max(Scalar(kLogClip));
  LossParts<Scalar> parts;
  parts.bce = -(g.array() * p.log() + (Scalar(1) - g.array()) * (Scalar(1) - p).log())
                   .mean();
  const Scalar overlap = (prob.array() * g.array()).sum();
  const Scalar denom = prob.sum() + g.sum() + Scalar(kSoftDiceEps);
  parts.soft_dice = Scalar(1) - Scalar(2) * overlap / denom;
  return parts;
}

template <typename Scalar>
Scalar partial_loss(const VectorX<Scalar>& prob, const MaskGrid& gt) {
  return partial_loss_parts(prob, gt).total();
}

// dLoss/dLogits for prob = sigmoid(logits). The BCE term reduces to
// (p - g)/n; the soft Dice term is chained through the sigmoid derivative.
template <typename Scalar>
VectorX<Scalar> partial_loss_grad_logits(const VectorX<Scalar>& prob,
                                         const MaskGrid& gt) {
  const Eigen::Index n = Eigen::Index(gt.rows()) * gt.cols();
  if (prob.size() != n) {
    throw std::invalid_argument("partial_loss: probability/mask shape mismatch");
  }
  const VectorX<Scalar> g = flatten_mask<Scalar>(gt);
  const Scalar overlap = (prob.array() * g.array()).sum();
  const Scalar denom = prob.sum() + g.sum() + Scalar(kSoftDiceEps);
  const auto d_dice_dp =
      (Scalar(-2) * (g.array() * denom - overlap) / (denom * denom));
  const auto d_sigmoid = prob.array() * (Scalar(1) - prob.array());
  return ((prob.array() - g.array()) / Scalar(n) + d_dice_dp * d_sigmoid)
      .matrix();
}

}  // namespace glam::train
