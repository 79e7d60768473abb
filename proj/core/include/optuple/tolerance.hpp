#pragma once

#include <algorithm>
#include <cstddef>

namespace optuple {

/// Uniform tolerance policy: a comparison at scale s passes below
/// max(abs, rel*s). Rank decisions use the conventional SVD rule
/// max(abs, rel * sigma_max * max(rows, cols)).
struct Tolerance {
  double rel = 1e-10;
  double abs = 1e-12;

  double threshold(double scale) const { return std::max(abs, rel * scale); }

  double rank_threshold(double sigma_max, std::size_t rows, std::size_t cols) const {
    return std::max(abs, rel * sigma_max * static_cast<double>(std::max(rows, cols)));
  }
};

}  // namespace optuple
