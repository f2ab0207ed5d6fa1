#pragma once

#include <stdexcept>
#include <string>

#include "glam/core/types.hpp"

namespace glam::net {

// One-hot task encoding selecting which lesion class to segment.
template <typename Scalar>
struct ClassVector {
  VectorX<Scalar> values;  // exactly one entry equals 1
  int class_id = 0;        // 1-based index of that entry
};

template <typename Scalar>
ClassVector<Scalar> encode_task(int class_id, int num_classes) {
  if (class_id < 1 || class_id > num_classes) {
    throw std::out_of_range("encode_task: class " + std::to_string(class_id) +
                            " outside [1, " + std::to_string(num_classes) +
                            "]");
  }
  ClassVector<Scalar> v;
  v.values = VectorX<Scalar>::Zero(num_classes);
  v.values(class_id - 1) = Scalar(1);
  v.class_id = class_id;
  return v;
}

}  // namespace glam::net
