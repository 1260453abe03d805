#include <atomic>
#include <cstdlib>
#include <cstring>

#include "kernels_impl.hpp"

namespace poncelet::kernels {

const char* to_string(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

const Kernels* avx2_kernels() {
#ifdef PONCELET_HAVE_AVX2
  static const bool ok = __builtin_cpu_supports("avx2");
  return ok ? &avx2_table() : nullptr;
#else
  return nullptr;
#endif
}

namespace {

const Kernels* pick_default() {
  const char* env = std::getenv("PONCELET_SIMD");
  if (env && std::strcmp(env, "scalar") == 0) return &scalar_kernels();
  if (const Kernels* k = avx2_kernels()) return k;
  return &scalar_kernels();
}

std::atomic<const Kernels*> g_active{nullptr};

}  // namespace

const Kernels& active() {
  const Kernels* k = g_active.load(std::memory_order_acquire);
  if (!k) {
    k = pick_default();
    g_active.store(k, std::memory_order_release);
  }
  return *k;
}

void force(Isa isa) {
  const Kernels* k = &scalar_kernels();
  if (isa == Isa::avx2 && avx2_kernels()) k = avx2_kernels();
  g_active.store(k, std::memory_order_release);
}

void reset() { g_active.store(pick_default(), std::memory_order_release); }

}  // namespace poncelet::kernels
