#include "gmfuse/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace gmfuse::kernels {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

namespace {

Backend pick_default() {
    if (const char* env = std::getenv("GMFUSE_KERNELS")) {
        if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
        if (std::strcmp(env, "avx2") == 0 && cpu_has_avx2()) return Backend::avx2;
    }
    return cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
}

std::atomic<Backend> g_backend{pick_default()};

} // namespace

Backend active_backend() { return g_backend.load(std::memory_order_relaxed); }

std::string_view backend_name(Backend b) {
    return b == Backend::avx2 ? "avx2" : "scalar";
}

void force_backend(Backend b) {
    if (b == Backend::avx2 && !cpu_has_avx2()) return;
    g_backend.store(b, std::memory_order_relaxed);
}

const KernelTable& active() {
#if defined(__x86_64__) || defined(_M_X64)
    if (active_backend() == Backend::avx2) return avx2::table;
#endif
    return scalar::table;
}

} // namespace gmfuse::kernels
