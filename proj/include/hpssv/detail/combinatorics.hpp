#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace hpssv::detail {

inline constexpr int kExactFactorialMax = 20;

inline constexpr std::array<std::uint64_t, kExactFactorialMax + 1> kFactorials = [] {
  std::array<std::uint64_t, kExactFactorialMax + 1> table{};
  table[0] = 1;
  for (int k = 1; k <= kExactFactorialMax; ++k) table[k] = table[k - 1] * static_cast<std::uint64_t>(k);
  return table;
}();

inline double log_factorial(int k) {
  if (k <= kExactFactorialMax) return std::log(static_cast<double>(kFactorials[k]));
  return std::lgamma(static_cast<double>(k) + 1.0);
}

/// k! exactly up to 20!, log-gamma beyond.
inline double factorial(int k) {
  if (k <= kExactFactorialMax) return static_cast<double>(kFactorials[k]);
  return std::exp(std::lgamma(static_cast<double>(k) + 1.0));
}

/// x^k with 0^0 = 1 and an integer exponent.
template <class T>
T ipow(T x, int k) {
  T out{1};
  for (int i = 0; i < k; ++i) out *= x;
  return out;
}

}  // namespace hpssv::detail
