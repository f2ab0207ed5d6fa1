#pragma once

#include "glam/core/rng.hpp"
#include "glam/net/backbone.hpp"
#include "glam/net/controller.hpp"
#include "glam/net/head.hpp"

namespace glam::net {

template <typename Scalar>
struct NetworkTape {
  BackboneTape<Scalar> backbone;
  FeatureMap<Scalar> bottleneck;
  FeatureMap<Scalar> decoded;
  VectorX<Scalar> pooled;
  ClassVector<Scalar> task;
  DynamicKernels<Scalar> kernels;
  HeadTape<Scalar> head;
  VectorX<Scalar> logits;
};

// The full class-conditional segmentation model: residual U-Net backbone,
// class-aware kernel controller and three-layer dynamic head.
template <typename Scalar>
class Network {
 public:
  explicit Network(const NetworkConfig& cfg)
      : cfg_(cfg), backbone_(cfg, params_) {
    const Eigen::Index in_dim = cfg.bottleneck_channels() + cfg.num_classes;
    const Eigen::Index out_dim =
        kernel_width(cfg.decoder_channels, cfg.head_hidden);
    controller_.w = params_.add("controller.w", in_dim, out_dim);
    controller_.b = params_.add("controller.b", out_dim, 1);
  }

  const NetworkConfig& config() const { return cfg_; }
  ParamStore<Scalar>& params() { return params_; }
  const ParamStore<Scalar>& params() const { return params_; }

  // Fan-in-scaled normal init for weights, zero biases, in registration
  // order; fully determined by the seed.
  void init_params(std::uint64_t seed) {
    Rng rng(seed);
    for (auto& entry : params_.entries()) {
      const bool is_bias = entry.name.ends_with(".b");
      if (is_bias) {
        entry.value.setZero();
        continue;
      }
      const double fan_in = static_cast<double>(entry.value.rows());
      const double scale = std::sqrt(2.0 / fan_in);
      for (Eigen::Index c = 0; c < entry.value.cols(); ++c) {
        for (Eigen::Index r = 0; r < entry.value.rows(); ++r) {
          entry.value(r, c) = static_cast<Scalar>(rng.normal() * scale);
        }
      }
    }
  }

  void init_params() { init_params(cfg_.seed); }

  // Logits for one (image, class) query.
  VectorX<Scalar> forward_logits(const FeatureMap<Scalar>& image, int class_id,
                                 NetworkTape<Scalar>* tape = nullptr) const {
    FeatureMap<Scalar> bottleneck, decoded;
    backbone_.forward(params_, image, bottleneck, decoded,
                      tape ? &tape->backbone : nullptr);
    const VectorX<Scalar> pooled = global_average_pool(bottleneck);
    const ClassVector<Scalar> task =
        encode_task<Scalar>(class_id, cfg_.num_classes);
    const DynamicKernels<Scalar> kernels = generate_kernels(
        pooled, task, params_.value(controller_.w), params_.value(controller_.b),
        cfg_.decoder_channels, cfg_.head_hidden);
    VectorX<Scalar> logits =
        apply_dynamic_head(decoded, kernels, tape ? &tape->head : nullptr);
    if (tape) {
      tape->bottleneck = std::move(bottleneck);
      tape->decoded = std::move(decoded);
      tape->pooled = pooled;
      tape->task = task;
      tape->kernels = kernels;
      tape->logits = logits;
    }
    return logits;
  }

  // Probability map in (0, 1); same spatial layout as the input.
  VectorX<Scalar> forward(const FeatureMap<Scalar>& image, int class_id,
                          NetworkTape<Scalar>* tape = nullptr) const {
    return sigmoid(forward_logits(image, class_id, tape));
  }

  static VectorX<Scalar> sigmoid(const VectorX<Scalar>& logits) {
    constexpr Scalar floor = Scalar(1e-7);
    VectorX<Scalar> p =
        (Scalar(1) / (Scalar(1) + (-logits.array()).exp())).matrix();
    return p.array().min(Scalar(1) - floor).max(floor).matrix();
  }

  // Accumulates parameter gradients for one query given dLoss/dLogits.
  // Covers both routes into the bottleneck feature: the decoder path and the
  // pooled-feature path through the controller.
  void backward(const NetworkTape<Scalar>& tape, const VectorX<Scalar>& d_logits,
                ParamStore<Scalar>& grads) const {
    FeatureMap<Scalar> d_decoded(tape.decoded.height, tape.decoded.width,
                                 tape.decoded.channels());
    const DynamicKernels<Scalar> d_kernels = dynamic_head_backward(
        tape.decoded, tape.kernels, tape.head, d_logits, d_decoded);
    const VectorX<Scalar> d_flat = flatten_kernels(d_kernels);
    const VectorX<Scalar> d_pooled = controller_backward(
        tape.pooled, tape.task, params_.value(controller_.w), d_flat,
        grads.value(controller_.w), grads.value(controller_.b));
    FeatureMap<Scalar> d_bottleneck(tape.bottleneck.height,
                                    tape.bottleneck.width,
                                    tape.bottleneck.channels());
    global_average_pool_backward(d_pooled, d_bottleneck);
    backbone_.backward(params_, tape.backbone, d_decoded, d_bottleneck, grads);
  }

 private:
  NetworkConfig cfg_;
  ParamStore<Scalar> params_;
  Backbone<Scalar> backbone_;
  ConvRef controller_;
};

}  // namespace glam::net
