#pragma once

#include <cmath>

#include "glam/net/params.hpp"

namespace glam::train {

struct AdamConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// Adaptive-moment gradient descent; moment arrays parallel the parameter
// store entry for entry.
template <typename Scalar>
class Adam {
 public:
  Adam(const net::ParamStore<Scalar>& params, AdamConfig cfg)
      : cfg_(cfg), m_(params.clone_zeroed()), v_(params.clone_zeroed()) {}

  void step(net::ParamStore<Scalar>& params,
            const net::ParamStore<Scalar>& grads) {
    ++t_;
    const Scalar b1 = Scalar(cfg_.beta1);
    const Scalar b2 = Scalar(cfg_.beta2);
    const Scalar corr1 = Scalar(1) - Scalar(std::pow(cfg_.beta1, t_));
    const Scalar corr2 = Scalar(1) - Scalar(std::pow(cfg_.beta2, t_));
    const Scalar lr = Scalar(cfg_.learning_rate);
    const Scalar eps = Scalar(cfg_.eps);
    for (std::size_t i = 0; i < params.size(); ++i) {
      auto& theta = params.entries()[i].value;
      const auto& g = grads.entries()[i].value;
      auto& m = m_.entries()[i].value;
      auto& v = v_.entries()[i].value;
      m = b1 * m + (Scalar(1) - b1) * g;
      v = (b2 * v.array() + (Scalar(1) - b2) * g.array().square()).matrix();
      theta.array() -= lr * (m.array() / corr1) /
                       ((v.array() / corr2).sqrt() + eps);
    }
  }

  std::int64_t steps() const { return t_; }

 private:
  AdamConfig cfg_;
  net::ParamStore<Scalar> m_, v_;
  std::int64_t t_ = 0;
};

}  // namespace glam::train
