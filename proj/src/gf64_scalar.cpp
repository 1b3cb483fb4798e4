#include "kh/gf64.hpp"

namespace kh::gf64 {

namespace {

// t^64 == t^4 + t^3 + t + 1, so folding hi into lo is hi * 0x1B.
inline uint64_t fold(uint64_t hi, uint64_t lo) {
  uint64_t over = (hi >> 63) ^ (hi >> 61) ^ (hi >> 60);
  lo ^= hi ^ (hi << 1) ^ (hi << 3) ^ (hi << 4);
  lo ^= over ^ (over << 1) ^ (over << 3) ^ (over << 4);
  return lo;
}

}  // namespace

uint64_t mul_scalar(uint64_t a, uint64_t b) {
  uint64_t hi = 0, lo = 0;
  for (int i = 0; i < 64; ++i) {
    if ((b >> i) & 1) {
      lo ^= a << i;
      if (i) hi ^= a >> (64 - i);
    }
  }
  return fold(hi, lo);
}

void axpy_scalar(uint64_t* y, const uint64_t* x, uint64_t c, std::size_t n) {
  if (c == 0) return;
  for (std::size_t i = 0; i < n; ++i)
    if (x[i]) y[i] ^= mul_scalar(c, x[i]);
}

}  // namespace kh::gf64
