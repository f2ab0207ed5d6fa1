#pragma once

#include <string>
#include <vector>

#include "glam/net/config.hpp"
#include "glam/net/ops.hpp"
#include "glam/net/params.hpp"

namespace glam::net {

struct ConvRef {
  int w = -1;
  int b = -1;
};

struct ResBlockRef {
  ConvRef conv1, conv2, proj;  // proj.w < 0 means identity shortcut
  int in_channels = 0;
  int out_channels = 0;
};

template <typename Scalar>
struct ResBlockTape {
  FeatureMap<Scalar> input;
  FeatureMap<Scalar> pre1;    // first conv output before the rectifier
  FeatureMap<Scalar> output;  // block output (post rectifier)
};

template <typename Scalar>
struct BackboneTape {
  struct EncLevel {
    ResBlockTape<Scalar> res1, res2;
    PoolArgmax argmax;
    int pooled_height = 0, pooled_width = 0;
  };
  struct DecLevel {
    FeatureMap<Scalar> up_in;  // input to the transposed convolution
    ResBlockTape<Scalar> res1, res2;
  };
  std::vector<EncLevel> encoder;
  ResBlockTape<Scalar> bott1, bott2;
  std::vector<DecLevel> decoder;   // indexed by encoder level
  FeatureMap<Scalar> decoded_in;   // input to the final 1x1 projection
};

// Residual U-Net: two residual conv blocks per level, 2x2 max-pool
// downsampling, transposed-conv upsampling, skip connections by channel
// concatenation, and a final 1x1 projection to the decoder output width.
template <typename Scalar>
class Backbone {
 public:
  Backbone(const NetworkConfig& cfg, ParamStore<Scalar>& store) : cfg_(cfg) {
    cfg.validate();
    int in_c = cfg.in_channels;
    for (int i = 0; i < cfg.depth - 1; ++i) {
      const int out_c = cfg.base_channels << i;
      const std::string base = "enc" + std::to_string(i);
      encoder_.push_back({make_res(store, base + ".res1", in_c, out_c),
                          make_res(store, base + ".res2", out_c, out_c)});
      in_c = out_c;
    }
    const int bott_c = cfg.bottleneck_channels();
    bott1_ = make_res(store, "bott.res1", in_c, bott_c);
    bott2_ = make_res(store, "bott.res2", bott_c, bott_c);
    int above_c = bott_c;
    up_.resize(cfg.depth - 1);
    dec_.resize(cfg.depth - 1);
    for (int i = cfg.depth - 2; i >= 0; --i) {
      const int out_c = cfg.base_channels << i;
      const std::string base = "dec" + std::to_string(i);
      up_[i].w = store.add(base + ".up.w", above_c, Eigen::Index(4) * out_c);
      up_[i].b = store.add(base + ".up.b", out_c, 1);
      dec_[i] = {make_res(store, base + ".res1", 2 * out_c, out_c),
                 make_res(store, base + ".res2", out_c, out_c)};
      above_c = out_c;
    }
    out_.w = store.add("out.w", cfg.base_channels, cfg.decoder_channels);
    out_.b = store.add("out.b", cfg.decoder_channels, 1);
  }

  // Produces the bottleneck feature and the decoded full-resolution map.
  // Pass a tape to record what the backward pass needs.
  void forward(const ParamStore<Scalar>& params, const FeatureMap<Scalar>& input,
               FeatureMap<Scalar>& bottleneck, FeatureMap<Scalar>& decoded,
               BackboneTape<Scalar>* tape) const {
    const int factor = cfg_.downsample_factor();
    if (input.height % factor != 0 || input.width % factor != 0) {
      throw std::invalid_argument(
          "backbone: spatial size " + std::to_string(input.width) + "x" +
          std::to_string(input.height) + " not divisible by " +
          std::to_string(factor) + " (depth " + std::to_string(cfg_.depth) +
          ")");
    }
    if (input.data.cols() != cfg_.in_channels) {
      throw std::invalid_argument("backbone: expected " +
                                  std::to_string(cfg_.in_channels) +
                                  " input channels");
    }
    if (tape) {
      tape->encoder.resize(cfg_.depth - 1);
      tape->decoder.resize(cfg_.depth - 1);
    }
    std::vector<FeatureMap<Scalar>> skips(cfg_.depth - 1);
    FeatureMap<Scalar> x = input;
    for (int i = 0; i < cfg_.depth - 1; ++i) {
      FeatureMap<Scalar> y1, y2;
      res_forward(params, encoder_[i].res1, x, y1,
                  tape ? &tape->encoder[i].res1 : nullptr);
      res_forward(params, encoder_[i].res2, y1, y2,
                  tape ? &tape->encoder[i].res2 : nullptr);
      FeatureMap<Scalar> pooled;
      PoolArgmax argmax;
      maxpool2x2_forward(y2, pooled, argmax);
      if (tape) {
        tape->encoder[i].argmax = std::move(argmax);
        tape->encoder[i].pooled_height = pooled.height;
        tape->encoder[i].pooled_width = pooled.width;
      }
      skips[i] = std::move(y2);
      x = std::move(pooled);
    }
    FeatureMap<Scalar> b1;
    res_forward(params, bott1_, x, b1, tape ? &tape->bott1 : nullptr);
    res_forward(params, bott2_, b1, bottleneck, tape ? &tape->bott2 : nullptr);
    x = bottleneck;
    for (int i = cfg_.depth - 2; i >= 0; --i) {
      if (tape) tape->decoder[i].up_in = x;
      FeatureMap<Scalar> up;
      tconv2x2_forward(x, params.value(up_[i].w), params.value(up_[i].b), up);
      FeatureMap<Scalar> cat;
      concat_channels(up, skips[i], cat);
      FeatureMap<Scalar> y1;
      res_forward(params, dec_[i].res1, cat, y1,
                  tape ? &tape->decoder[i].res1 : nullptr);
      FeatureMap<Scalar> y2;
      res_forward(params, dec_[i].res2, y1, y2,
                  tape ? &tape->decoder[i].res2 : nullptr);
      x = std::move(y2);
    }
    if (tape) tape->decoded_in = x;
    conv1x1_forward(x, params.value(out_.w), params.value(out_.b), decoded);
  }

  // d_bottleneck carries the pooled-feature path gradient (empty to skip).
  // Parameter gradients accumulate into `grads`.
  void backward(const ParamStore<Scalar>& params, const BackboneTape<Scalar>& tape,
                const FeatureMap<Scalar>& d_decoded,
                const FeatureMap<Scalar>& d_bottleneck,
                ParamStore<Scalar>& grads) const {
    FeatureMap<Scalar> d_x(tape.decoded_in.height, tape.decoded_in.width,
                           tape.decoded_in.channels());
    conv1x1_backward(tape.decoded_in, params.value(out_.w), d_decoded, d_x,
                     grads.value(out_.w), grads.value(out_.b));
    std::vector<FeatureMap<Scalar>> d_skips(cfg_.depth - 1);
    for (int i = 0; i < cfg_.depth - 1; ++i) {
      FeatureMap<Scalar> d_y1 =
          res_backward(params, dec_[i].res2, tape.decoder[i].res2, d_x, grads);
      FeatureMap<Scalar> d_cat =
          res_backward(params, dec_[i].res1, tape.decoder[i].res1, d_y1, grads);
      const int out_c = cfg_.base_channels << i;
      FeatureMap<Scalar> d_up;
      d_up.height = d_cat.height;
      d_up.width = d_cat.width;
      d_up.data = d_cat.data.leftCols(out_c);
      d_skips[i].height = d_cat.height;
      d_skips[i].width = d_cat.width;
      d_skips[i].data = d_cat.data.rightCols(out_c);
      FeatureMap<Scalar> d_prev(tape.decoder[i].up_in.height,
                                tape.decoder[i].up_in.width,
                                tape.decoder[i].up_in.channels());
      tconv2x2_backward(tape.decoder[i].up_in, params.value(up_[i].w), d_up,
                        d_prev, grads.value(up_[i].w), grads.value(up_[i].b));
      d_x = std::move(d_prev);
    }
    if (d_bottleneck.data.size() > 0) d_x.data += d_bottleneck.data;
    d_x = res_backward(params, bott2_, tape.bott2, d_x, grads);
    d_x = res_backward(params, bott1_, tape.bott1, d_x, grads);
    for (int i = cfg_.depth - 2; i >= 0; --i) {
      const auto& lvl = tape.encoder[i];
      FeatureMap<Scalar> d_pre_pool(lvl.res2.output.height,
                                    lvl.res2.output.width,
                                    lvl.res2.output.channels());
      FeatureMap<Scalar> d_pooled = std::move(d_x);
      d_pooled.height = lvl.pooled_height;
      d_pooled.width = lvl.pooled_width;
      maxpool2x2_backward(d_pooled, lvl.argmax, d_pre_pool);
      d_pre_pool.data += d_skips[i].data;
      FeatureMap<Scalar> d_y1 =
          res_backward(params, encoder_[i].res2, lvl.res2, d_pre_pool, grads);
      d_x = res_backward(params, encoder_[i].res1, lvl.res1, d_y1, grads);
    }
  }

  const ConvRef& out_projection() const { return out_; }

 private:
  struct LevelRefs {
    ResBlockRef res1, res2;
  };

  static ResBlockRef make_res(ParamStore<Scalar>& store, const std::string& name,
                              int in_c, int out_c) {
    ResBlockRef ref;
    ref.in_channels = in_c;
    ref.out_channels = out_c;
    ref.conv1.w = store.add(name + ".conv1.w", Eigen::Index(in_c) * 9, out_c);
    ref.conv1.b = store.add(name + ".conv1.b", out_c, 1);
    ref.conv2.w = store.add(name + ".conv2.w", Eigen::Index(out_c) * 9, out_c);
    ref.conv2.b = store.add(name + ".conv2.b", out_c, 1);
    if (in_c != out_c) {
      ref.proj.w = store.add(name + ".proj.w", in_c, out_c);
      ref.proj.b = store.add(name + ".proj.b", out_c, 1);
    }
    return ref;
  }

  void res_forward(const ParamStore<Scalar>& params, const ResBlockRef& ref,
                   const FeatureMap<Scalar>& x, FeatureMap<Scalar>& y,
                   ResBlockTape<Scalar>* tape) const {
    FeatureMap<Scalar> pre1;
    conv3x3_forward(x, params.value(ref.conv1.w), params.value(ref.conv1.b),
                    pre1);
    FeatureMap<Scalar> act1;
    relu_forward(pre1, act1);
    FeatureMap<Scalar> pre2;
    conv3x3_forward(act1, params.value(ref.conv2.w), params.value(ref.conv2.b),
                    pre2);
    if (ref.proj.w >= 0) {
      FeatureMap<Scalar> shortcut;
      conv1x1_forward(x, params.value(ref.proj.w), params.value(ref.proj.b),
                      shortcut);
      pre2.data += shortcut.data;
    } else {
      pre2.data += x.data;
    }
    relu_forward(pre2, y);
    if (tape) {
      tape->input = x;
      tape->pre1 = std::move(pre1);
      tape->output = y;
    }
  }

  FeatureMap<Scalar> res_backward(const ParamStore<Scalar>& params,
                                  const ResBlockRef& ref,
                                  const ResBlockTape<Scalar>& tape,
                                  const FeatureMap<Scalar>& d_out,
                                  ParamStore<Scalar>& grads) const {
    // The output is the rectifier of the residual sum, so its own sign gives
    // the rectifier mask.
    FeatureMap<Scalar> d_sum(tape.output.height, tape.output.width,
                             tape.output.channels());
    relu_backward(tape.output, d_out, d_sum);
    FeatureMap<Scalar> d_x(tape.input.height, tape.input.width,
                           tape.input.channels());
    if (ref.proj.w >= 0) {
      conv1x1_backward(tape.input, params.value(ref.proj.w), d_sum, d_x,
                       grads.value(ref.proj.w), grads.value(ref.proj.b));
    } else {
      d_x.data += d_sum.data;
    }
    FeatureMap<Scalar> act1;
    relu_forward(tape.pre1, act1);
    FeatureMap<Scalar> d_act1(act1.height, act1.width, act1.channels());
    conv3x3_backward(act1, params.value(ref.conv2.w), d_sum, d_act1,
                     grads.value(ref.conv2.w), grads.value(ref.conv2.b));
    FeatureMap<Scalar> d_pre1(act1.height, act1.width, act1.channels());
    relu_backward(tape.pre1, d_act1, d_pre1);
    conv3x3_backward(tape.input, params.value(ref.conv1.w), d_pre1, d_x,
                     grads.value(ref.conv1.w), grads.value(ref.conv1.b));
    return d_x;
  }

  NetworkConfig cfg_;
  std::vector<LevelRefs> encoder_;
  ResBlockRef bott1_, bott2_;
  std::vector<ConvRef> up_;
  std::vector<LevelRefs> dec_;
  ConvRef out_;
};

}  // namespace glam::net
