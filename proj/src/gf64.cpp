#include "kh/gf64.hpp"

#include <atomic>

namespace kh::gf64 {

namespace {

bool detect_clmul() {
#if defined(KH_HAVE_CLMUL) && (defined(__x86_64__) || defined(__i386__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("pclmul") && __builtin_cpu_supports("sse4.1");
#else
  return false;
#endif
}

std::atomic<Kernel>& current() {
  static std::atomic<Kernel> k{detect_clmul() ? Kernel::Clmul : Kernel::Scalar};
  return k;
}

}  // namespace

bool clmul_available() {
  static const bool ok = detect_clmul();
  return ok;
}

Kernel active_kernel() { return current().load(std::memory_order_relaxed); }

void force_kernel(Kernel k) {
  if (k == Kernel::Clmul && !clmul_available()) k = Kernel::Scalar;
  current().store(k, std::memory_order_relaxed);
}

const char* kernel_name(Kernel k) { return k == Kernel::Clmul ? "clmul" : "scalar"; }

uint64_t mul(uint64_t a, uint64_t b) {
#if defined(KH_HAVE_CLMUL)
  if (active_kernel() == Kernel::Clmul) return mul_clmul(a, b);
#endif
  return mul_scalar(a, b);
}

void axpy(uint64_t* y, const uint64_t* x, uint64_t c, std::size_t n) {
#if defined(KH_HAVE_CLMUL)
  if (active_kernel() == Kernel::Clmul) return axpy_clmul(y, x, c, n);
#endif
  axpy_scalar(y, x, c, n);
}

uint64_t pow(uint64_t a, uint64_t e) {
  uint64_t r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

uint64_t inv(uint64_t a) { return pow(a, ~uint64_t{0} - 1); }

}  // namespace kh::gf64
