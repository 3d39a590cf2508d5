#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace wm {

// Mixed-radix index over a product of finite sets, row-major (last component
// fastest).
struct JointSpace {
  std::vector<std::size_t> sizes;
  std::size_t total = 1;

  JointSpace() = default;
  explicit JointSpace(std::vector<std::size_t> s) : sizes(std::move(s)) {
    for (std::size_t k : sizes) total *= k;
  }

  std::size_t encode(std::span<const std::size_t> idx) const {
    std::size_t code = 0;
    for (std::size_t k = 0; k < sizes.size(); ++k) code = code * sizes[k] + idx[k];
    return code;
  }

  void decode(std::size_t code, std::vector<std::size_t>& idx) const {
    idx.resize(sizes.size());
    for (std::size_t k = sizes.size(); k-- > 0;) {
      idx[k] = code % sizes[k];
      code /= sizes[k];
    }
  }
};

}  // namespace wm
