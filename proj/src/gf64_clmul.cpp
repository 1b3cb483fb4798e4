// Built with -mpclmul -msse4.1; only called after the runtime check passes.
#include <immintrin.h>

#include "kh/gf64.hpp"

namespace kh::gf64 {

namespace {

inline uint64_t reduce(__m128i prod) {
  const __m128i r = _mm_set_epi64x(0, static_cast<long long>(kModulusLow));
  __m128i hi = _mm_srli_si128(prod, 8);
  __m128i t = _mm_clmulepi64_si128(hi, r, 0x00);  // < 2^68
  __m128i t_hi = _mm_srli_si128(t, 8);
  __m128i u = _mm_clmulepi64_si128(t_hi, r, 0x00);  // < 2^8
  __m128i lo = _mm_xor_si128(_mm_xor_si128(prod, t), u);
  return static_cast<uint64_t>(_mm_cvtsi128_si64(lo));
}

}  // namespace

uint64_t mul_clmul(uint64_t a, uint64_t b) {
  __m128i va = _mm_cvtsi64_si128(static_cast<long long>(a));
  __m128i vb = _mm_cvtsi64_si128(static_cast<long long>(b));
  return reduce(_mm_clmulepi64_si128(va, vb, 0x00));
}

void axpy_clmul(uint64_t* y, const uint64_t* x, uint64_t c, std::size_t n) {
  if (c == 0) return;
  const __m128i vc = _mm_set_epi64x(static_cast<long long>(c), static_cast<long long>(c));
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m128i vx = _mm_loadu_si128(reinterpret_cast<const __m128i*>(x + i));
    uint64_t p0 = reduce(_mm_clmulepi64_si128(vx, vc, 0x00));
    uint64_t p1 = reduce(_mm_clmulepi64_si128(vx, vc, 0x11));
    y[i] ^= p0;
    y[i + 1] ^= p1;
  }
  for (; i < n; ++i) y[i] ^= mul_clmul(c, x[i]);
}

}  // namespace kh::gf64
