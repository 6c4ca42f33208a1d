#pragma once

#include <cstddef>
#include <span>

namespace hpssv::detail {

/// Pairwise summation; the reduction tree depends only on the length.
inline double pairwise_sum(std::span<const double> values) {
  constexpr std::size_t kLeaf = 16;
  if (values.size() <= kLeaf) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

/// Composite Simpson weight of node i out of `intervals` (even) intervals,
/// without the h/3 factor.
inline double simpson_weight(std::size_t i, std::size_t intervals) {
  if (i == 0 || i == intervals) return 1.0;
  return (i % 2 == 1) ? 4.0 : 2.0;
}

}  // namespace hpssv::detail
