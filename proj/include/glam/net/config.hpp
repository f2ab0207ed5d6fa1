#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace glam::net {

struct NetworkConfig {
  int num_classes = 6;
  int in_channels = 3;
  int base_channels = 32;   // encoder widths double per level
  int depth = 5;            // encoder levels including the bottleneck
  int decoder_channels = 8; // channels of the decoded map fed to the head
  int head_hidden = 8;      // hidden width of the dynamic head
  std::string init = "he";  // fan-in-scaled normal, zero biases
  std::uint64_t seed = 1234;

  int bottleneck_channels() const { return base_channels << (depth - 1); }
  int downsample_factor() const { return 1 << (depth - 1); }

  void validate() const {
    if (num_classes < 1) throw std::invalid_argument("num_classes must be >= 1");
    if (in_channels < 1) throw std::invalid_argument("in_channels must be >= 1");
    if (base_channels < 1)
      throw std::invalid_argument("base_channels must be >= 1");
    if (depth < 2) throw std::invalid_argument("depth must be >= 2");
    if (decoder_channels < 1)
      throw std::invalid_argument("decoder_channels must be >= 1");
    if (head_hidden < 1) throw std::invalid_argument("head_hidden must be >= 1");
    if (init != "he") throw std::invalid_argument("unknown init scheme: " + init);
  }
};

}  // namespace glam::net
