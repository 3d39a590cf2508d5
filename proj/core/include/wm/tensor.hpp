#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "wm/common.hpp"

namespace wm {

// Dense row-major tensor of doubles. Conditional-probability tensors follow
// the convention that axis 0 indexes the distribution (the normalised axis)
// and the remaining axes index the conditioning variables, so an axis-0
// "slice" s holds entries data[i * slice_count + s] for i in [0, shape[0]).
class Tensor {
public:
  Tensor() = default;
  explicit Tensor(std::vector<std::size_t> shape, double fill = 0.0);

  std::size_t rank() const { return shape_.size(); }
  const std::vector<std::size_t>& shape() const { return shape_; }
  std::size_t size() const { return data_.size(); }

  double& operator[](std::size_t flat) { return data_[flat]; }
  double operator[](std::size_t flat) const { return data_[flat]; }

  std::size_t offset(std::span<const std::size_t> idx) const;
  double& at(std::span<const std::size_t> idx) { return data_[offset(idx)]; }
  double at(std::span<const std::size_t> idx) const { return data_[offset(idx)]; }

  // Number of axis-0 slices (= product of the conditioning cardinalities).
  std::size_t slice_count() const {
    return shape_.empty() ? 0 : data_.size() / shape_[0];
  }
  double& at_slice(std::size_t i0, std::size_t slice) {
    return data_[i0 * slice_count() + slice];
  }
  double at_slice(std::size_t i0, std::size_t slice) const {
    return data_[i0 * slice_count() + slice];
  }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  bool same_shape(const Tensor& other) const { return shape_ == other.shape_; }

  // Normalises every axis-0 slice to sum 1. Throws ZeroSliceError on a
  // zero-mass slice.
  void normalise_slices();

private:
  std::vector<std::size_t> shape_;
  std::vector<double> data_;
};

// Odometer over all multi-indices of a shape, row-major order.
class IndexIter {
public:
  explicit IndexIter(std::span<const std::size_t> shape)
      : shape_(shape.begin(), shape.end()), idx_(shape.size(), 0) {
    done_ = false;
    for (std::size_t s : shape_)
      if (s == 0) done_ = true;
  }
  bool done() const { return done_; }
  std::span<const std::size_t> operator*() const { return idx_; }
  void next() {
    for (std::size_t k = idx_.size(); k-- > 0;) {
      if (++idx_[k] < shape_[k]) return;
      idx_[k] = 0;
    }
    done_ = true;
  }

private:
  std::vector<std::size_t> shape_;
  std::vector<std::size_t> idx_;
  bool done_ = true;
};

}  // namespace wm
