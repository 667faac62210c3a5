#pragma once

#include <cmath>
#include <limits>

namespace spl {

// Log-domain scalar helpers. Zero is carried exactly as -inf so that
// constraint indicators stay hard zeros through sums and products.
inline constexpr double kLogZero = -std::numeric_limits<double>::infinity();

inline double logFromLinear(double x) { return x > 0.0 ? std::log(x) : kLogZero; }

inline bool isLogZero(double lv) { return lv == kLogZero; }

inline double logAdd(double a, double b) {
  if (isLogZero(a)) return b;
  if (isLogZero(b)) return a;
  if (a < b) std::swap(a, b);
  return a + std::log1p(std::exp(b - a));
}

inline double logMul(double a, double b) {
  if (isLogZero(a) || isLogZero(b)) return kLogZero;
  return a + b;
}

}  // namespace spl
