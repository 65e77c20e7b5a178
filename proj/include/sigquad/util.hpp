#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>

namespace sigquad {

// Diagnostics go to stderr, prefixed "[sigquad]"; never fatal.
void warn(const std::string& message);

// x^k for integer k >= 0 by repeated multiplication (fixed evaluation
// order, identical results on every libm).
inline double ipow(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

// Seedable uniform generator. uniform01 maps the top 53 bits of the
// mt19937_64 output, so streams are bit-identical across standard
// libraries (std::uniform_real_distribution is not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform01(); }
  std::uint64_t next_u64() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

// FNV-1a, used for file provenance fingerprints.
std::uint64_t fnv1a(std::span<const unsigned char> bytes);
std::uint64_t fnv1a(const std::string& text);

}  // namespace sigquad
