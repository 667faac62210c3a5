#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace spl {

// Deterministic RNG wrapper. std::mt19937_64 output is pinned by the standard;
// the derived draws below avoid std::*_distribution, whose streams are
// implementation-defined, so seeded runs are byte-identical across platforms.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  uint64_t nextU64() { return gen_(); }

  // Unbiased integer in [0, n) by rejection.
  uint64_t below(uint64_t n) {
    uint64_t limit = std::numeric_limits<uint64_t>::max() - std::numeric_limits<uint64_t>::max() % n;
    uint64_t x;
    do {
      x = gen_();
    } while (x >= limit);
    return x % n;
  }

  // Uniform in [0, 1) with 53 bits.
  double unit() { return (gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  // Marsaglia polar method; spare value cached for determinism.
  double normal() {
    if (hasSpare_) {
      hasSpare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * unit() - 1.0;
      v = 2.0 * unit() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    hasSpare_ = true;
    return u * m;
  }

  bool coin(double p = 0.5) { return unit() < p; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  // k distinct values from [0, n), in selection order.
  std::vector<uint32_t> sampleWithoutReplacement(uint32_t n, uint32_t k) {
    std::vector<uint32_t> pool(n);
    for (uint32_t i = 0; i < n; ++i) pool[i] = i;
    std::vector<uint32_t> out;
    out.reserve(k);
    for (uint32_t i = 0; i < k; ++i) {
      size_t j = static_cast<size_t>(below(n - i));
      out.push_back(pool[j]);
      std::swap(pool[j], pool[n - i - 1]);
    }
    return out;
  }

 private:
  std::mt19937_64 gen_;
  bool hasSpare_ = false;
  double spare_ = 0.0;
};

}  // namespace spl
