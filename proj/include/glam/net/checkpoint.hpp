#pragma once

#include <map>
#include <string>
#include <vector>

#include "glam/net/config.hpp"
#include "glam/net/network.hpp"
#include "glam/net/params.hpp"

namespace glam::net {

struct ValidationScores {
  std::vector<double> per_class;  // NaN where a class was absent
  double mean = 0.0;              // mean of present per-class means
};

struct CheckpointInfo {
  int version = 1;
  NetworkConfig config;
  std::vector<std::string> class_order;
  int epoch = 0;
  std::map<std::string, ValidationScores> validation;  // keyed by val set
};

// Checkpoint layout: <dir>/manifest.json (config snapshot, class order,
// epoch, validation scores, array table) + <dir>/params.bin (named raw
// little-endian float32 arrays, column-major, in registration order).
// Loading restores the arrays bit-exactly.
void save_checkpoint(const std::string& dir, const ParamStore<float>& params,
                     const CheckpointInfo& info);

struct LoadedCheckpoint {
  CheckpointInfo info;
  ParamStore<float> params;
};

LoadedCheckpoint load_checkpoint(const std::string& dir);

// Copies loaded arrays into a network built from the checkpoint's own config
// snapshot; throws if names or shapes disagree.
Network<float> network_from_checkpoint(const LoadedCheckpoint& loaded);

}  // namespace glam::net
