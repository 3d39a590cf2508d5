#include "wm/tensor.hpp"

#include <numeric>
#include <string>

namespace wm {

Tensor::Tensor(std::vector<std::size_t> shape, double fill) : shape_(std::move(shape)) {
  std::size_t n = 1;
  for (std::size_t s : shape_) n *= s;
  data_.assign(shape_.empty() ? 0 : n, fill);
}

std::size_t Tensor::offset(std::span<const std::size_t> idx) const {
  if (idx.size() != shape_.size())
    throw DimensionError("tensor index rank " + std::to_string(idx.size()) +
                         " != tensor rank " + std::to_string(shape_.size()));
  std::size_t off = 0;
  for (std::size_t k = 0; k < shape_.size(); ++k) {
    if (idx[k] >= shape_[k])
      throw DimensionError("tensor index out of range on axis " + std::to_string(k));
    off = off * shape_[k] + idx[k];
  }
  return off;
}

void Tensor::normalise_slices() {
  if (shape_.empty() || shape_[0] == 0) return;
  const std::size_t slices = slice_count();
  const std::size_t card = shape_[0];
  for (std::size_t s = 0; s < slices; ++s) {
    double total = 0.0;
    for (std::size_t i = 0; i < card; ++i) total += at_slice(i, s);
    if (!(total > 0.0))
      throw ZeroSliceError("zero-mass slice " + std::to_string(s));
    for (std::size_t i = 0; i < card; ++i) at_slice(i, s) /= total;
  }
}

}  // namespace wm
