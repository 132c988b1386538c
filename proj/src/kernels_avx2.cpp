#if defined(__x86_64__) || defined(_M_X64)

#include "gmfuse/kernels.hpp"

#include <cmath>
#include <immintrin.h>

// AVX2/FMA variants, 4 doubles per lane group with a scalar tail. Horizontal
// reductions use a fixed fold order so each backend is deterministic on its
// own.

namespace gmfuse::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(lo) + _mm_cvtsd_f64(_mm_unpackhi_pd(lo, lo));
}

inline double hmin(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_min_pd(lo, hi);
    const double a = _mm_cvtsd_f64(lo);
    const double b = _mm_cvtsd_f64(_mm_unpackhi_pd(lo, lo));
    return a < b ? a : b;
}

inline double hmax(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_max_pd(lo, hi);
    const double a = _mm_cvtsd_f64(lo);
    const double b = _mm_cvtsd_f64(_mm_unpackhi_pd(lo, lo));
    return a > b ? a : b;
}

inline __m256d abs_pd(__m256d v) {
    const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    return _mm256_and_pd(v, mask);
}

double k_sum(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
    double s = hsum(acc);
    for (; i < n; ++i) s += x[i];
    return s;
}

double k_prod(const double* x, std::size_t n) {
    __m256d acc = _mm256_set1_pd(1.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_mul_pd(acc, _mm256_loadu_pd(x + i));
    __m128d lo = _mm256_castpd256_pd128(acc);
    __m128d hi = _mm256_extractf128_pd(acc, 1);
    lo = _mm_mul_pd(lo, hi);
    double p = _mm_cvtsd_f64(lo) * _mm_cvtsd_f64(_mm_unpackhi_pd(lo, lo));
    for (; i < n; ++i) p *= x[i];
    return p;
}

double k_min(const double* x, std::size_t n) {
    std::size_t i = 0;
    double m;
    if (n >= 4) {
        __m256d acc = _mm256_loadu_pd(x);
        for (i = 4; i + 4 <= n; i += 4) acc = _mm256_min_pd(acc, _mm256_loadu_pd(x + i));
        m = hmin(acc);
    } else {
        m = x[0];
        i = 1;
    }
    for (; i < n; ++i) m = x[i] < m ? x[i] : m;
    return m;
}

double k_max(const double* x, std::size_t n) {
    std::size_t i = 0;
    double m;
    if (n >= 4) {
        __m256d acc = _mm256_loadu_pd(x);
        for (i = 4; i + 4 <= n; i += 4) acc = _mm256_max_pd(acc, _mm256_loadu_pd(x + i));
        m = hmax(acc);
    } else {
        m = x[0];
        i = 1;
    }
    for (; i < n; ++i) m = x[i] > m ? x[i] : m;
    return m;
}

double k_dot(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

double k_abs_dev_sum(const double* x, std::size_t n, double alpha) {
    const __m256d va = _mm256_set1_pd(alpha);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc = _mm256_add_pd(acc, abs_pd(_mm256_sub_pd(_mm256_loadu_pd(x + i), va)));
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += std::fabs(x[i] - alpha);
    return s;
}

double k_sq_dist(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc = _mm256_fmadd_pd(d, d, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

void k_axpy(double a, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d r = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
        _mm256_storeu_pd(y + i, r);
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

void k_standardize(const double* x, const double* mu, const double* inv_sigma,
                   double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(mu + i));
        _mm256_storeu_pd(out + i, _mm256_mul_pd(d, _mm256_loadu_pd(inv_sigma + i)));
    }
    for (; i < n; ++i) out[i] = (x[i] - mu[i]) * inv_sigma[i];
}

} // namespace

const KernelTable table = {
    k_sum, k_prod, k_min, k_max, k_dot, k_abs_dev_sum, k_sq_dist, k_axpy, k_standardize,
};

} // namespace gmfuse::kernels::avx2

#endif // x86-64
