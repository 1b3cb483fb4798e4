#pragma once

// Arithmetic in GF(2^64) = GF(2)[t] / (t^64 + t^4 + t^3 + t + 1).
// Elements are uint64_t bit vectors, bit i is the coefficient of t^i.
// Every kernel has a portable scalar reference; the carry-less multiply
// variant is chosen at runtime when the CPU reports pclmulqdq.

#include <cstddef>
#include <cstdint>

namespace kh::gf64 {

inline constexpr uint64_t kModulusLow = 0x1B;  // t^4 + t^3 + t + 1

enum class Kernel { Scalar, Clmul };

bool clmul_available();
Kernel active_kernel();
// Pins the dispatcher (tests use this); Clmul silently falls back to Scalar
// when the CPU lacks it.
void force_kernel(Kernel k);
const char* kernel_name(Kernel k);

uint64_t mul_scalar(uint64_t a, uint64_t b);
void axpy_scalar(uint64_t* y, const uint64_t* x, uint64_t c, std::size_t n);

uint64_t mul_clmul(uint64_t a, uint64_t b);
void axpy_clmul(uint64_t* y, const uint64_t* x, uint64_t c, std::size_t n);

uint64_t mul(uint64_t a, uint64_t b);
// y[i] ^= c * x[i]
void axpy(uint64_t* y, const uint64_t* x, uint64_t c, std::size_t n);

uint64_t pow(uint64_t a, uint64_t e);
// a^(2^64 - 2); inv(0) is 0
uint64_t inv(uint64_t a);

}  // namespace kh::gf64
