#pragma once

#include <cstddef>
#include <span>
#include <string_view>

// Data-parallel inner loops shared by the combiners and the base
// classifiers. Every kernel exists as a scalar reference implementation and
// (on x86-64 with AVX2) a vectorized variant. The backend is picked once at
// startup from CPU capabilities; tests and the GMFUSE_KERNELS environment
// variable can force a specific one. Vector reductions reassociate sums, so
// backends may differ in the last ulps; the equivalence suite pins the gap.

namespace gmfuse::kernels {

enum class Backend { scalar, avx2 };

struct KernelTable {
    double (*sum)(const double*, std::size_t);
    double (*prod)(const double*, std::size_t);
    double (*min)(const double*, std::size_t);
    double (*max)(const double*, std::size_t);
    double (*dot)(const double*, const double*, std::size_t);
    // sum_i |x_i - alpha|
    double (*abs_dev_sum)(const double*, std::size_t, double alpha);
    double (*sq_dist)(const double*, const double*, std::size_t);
    // y += a * x
    void (*axpy)(double a, const double*, double*, std::size_t);
    // out_i = (x_i - mu_i) * inv_sigma_i
    void (*standardize)(const double*, const double*, const double*, double*, std::size_t);
};

namespace scalar {
extern const KernelTable table;
}
#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
extern const KernelTable table;  // only valid to call when CPU has AVX2+FMA
}
#endif

bool cpu_has_avx2();
Backend active_backend();
std::string_view backend_name(Backend b);

// Overrides the dispatch choice. Requesting avx2 on a CPU without it is
// ignored. Intended for tests and the CLI --kernels flag.
void force_backend(Backend b);

const KernelTable& active();

inline double sum(std::span<const double> x) { return active().sum(x.data(), x.size()); }
inline double prod(std::span<const double> x) { return active().prod(x.data(), x.size()); }
inline double min(std::span<const double> x) { return active().min(x.data(), x.size()); }
inline double max(std::span<const double> x) { return active().max(x.data(), x.size()); }
inline double dot(std::span<const double> a, std::span<const double> b) {
    return active().dot(a.data(), b.data(), a.size());
}
inline double abs_dev_sum(std::span<const double> x, double alpha) {
    return active().abs_dev_sum(x.data(), x.size(), alpha);
}
inline double sq_dist(std::span<const double> a, std::span<const double> b) {
    return active().sq_dist(a.data(), b.data(), a.size());
}
inline void axpy(double a, std::span<const double> x, std::span<double> y) {
    active().axpy(a, x.data(), y.data(), x.size());
}
inline void standardize(std::span<const double> x, std::span<const double> mu,
                        std::span<const double> inv_sigma, std::span<double> out) {
    active().standardize(x.data(), mu.data(), inv_sigma.data(), out.data(), x.size());
}

} // namespace gmfuse::kernels
