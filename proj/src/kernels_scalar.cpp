#include "gmfuse/kernels.hpp"

#include <cmath>

// Reference kernels. Plain loops, no manual unrolling: these are the ground
// truth the vector backends are checked against.

namespace gmfuse::kernels::scalar {

namespace {

double k_sum(const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i];
    return acc;
}

double k_prod(const double* x, std::size_t n) {
    double acc = 1.0;
    for (std::size_t i = 0; i < n; ++i) acc *= x[i];
    return acc;
}

double k_min(const double* x, std::size_t n) {
    double m = x[0];
    for (std::size_t i = 1; i < n; ++i) m = x[i] < m ? x[i] : m;
    return m;
}

double k_max(const double* x, std::size_t n) {
    double m = x[0];
    for (std::size_t i = 1; i < n; ++i) m = x[i] > m ? x[i] : m;
    return m;
}

double k_dot(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double k_abs_dev_sum(const double* x, std::size_t n, double alpha) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += std::fabs(x[i] - alpha);
    return acc;
}

double k_sq_dist(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return acc;
}

void k_axpy(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void k_standardize(const double* x, const double* mu, const double* inv_sigma,
                   double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = (x[i] - mu[i]) * inv_sigma[i];
}

} // namespace

const KernelTable table = {
    k_sum, k_prod, k_min, k_max, k_dot, k_abs_dev_sum, k_sq_dist, k_axpy, k_standardize,
};

} // namespace gmfuse::kernels::scalar
