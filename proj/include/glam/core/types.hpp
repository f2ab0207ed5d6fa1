#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace glam {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using ArrayXX = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

// Binary masks and label grids are h x w, (row, col) indexed.
using MaskGrid = Eigen::Array<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;

enum class Species { mouse, human };

inline const char* species_name(Species s) {
  return s == Species::mouse ? "mouse" : "human";
}

inline Species species_from_name(const std::string& name) {
  if (name == "mouse") return Species::mouse;
  if (name == "human") return Species::human;
  throw std::invalid_argument("unknown species: " + name);
}

}  // namespace glam
