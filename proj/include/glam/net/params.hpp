#pragma once

#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "glam/core/types.hpp"

namespace glam::net {

// Ordered collection of named parameter arrays. The registration order is
// part of the model layout: optimizer state, gradients and checkpoints all
// walk entries in this order.
template <typename Scalar>
class ParamStore {
 public:
  struct Entry {
    std::string name;
    MatrixX<Scalar> value;
  };

  int add(const std::string& name, Eigen::Index rows, Eigen::Index cols) {
    if (index_.count(name)) {
      throw std::invalid_argument("duplicate parameter name: " + name);
    }
    const int id = static_cast<int>(entries_.size());
    entries_.push_back({name, MatrixX<Scalar>::Zero(rows, cols)});
    index_.emplace(name, id);
    return id;
  }

  MatrixX<Scalar>& value(int id) { return entries_[id].value; }
  const MatrixX<Scalar>& value(int id) const { return entries_[id].value; }

  const MatrixX<Scalar>& at(const std::string& name) const {
    return entries_[id_of(name)].value;
  }
  MatrixX<Scalar>& at(const std::string& name) {
    return entries_[id_of(name)].value;
  }

  int id_of(const std::string& name) const {
    const auto it = index_.find(name);
    if (it == index_.end()) {
      throw std::out_of_range("unknown parameter: " + name);
    }
    return it->second;
  }

  bool contains(const std::string& name) const { return index_.count(name); }
  std::size_t size() const { return entries_.size(); }
  const std::vector<Entry>& entries() const { return entries_; }
  std::vector<Entry>& entries() { return entries_; }

  // A zeroed store with the same names and shapes (gradients, moments).
  ParamStore clone_zeroed() const {
    ParamStore out;
    for (const auto& e : entries_) {
      out.add(e.name, e.value.rows(), e.value.cols());
    }
    return out;
  }

  void set_zero() {
    for (auto& e : entries_) e.value.setZero();
  }

  Eigen::Index total_coefficients() const {
    Eigen::Index n = 0;
    for (const auto& e : entries_) n += e.value.size();
    return n;
  }

  template <typename Other>
  ParamStore<Other> cast() const {
    ParamStore<Other> out;
    for (const auto& e : entries_) {
      const int id = out.add(e.name, e.value.rows(), e.value.cols());
      out.value(id) = e.value.template cast<Other>();
    }
    return out;
  }

 private:
  std::vector<Entry> entries_;
  std::unordered_map<std::string, int> index_;
};

}  // namespace glam::net
