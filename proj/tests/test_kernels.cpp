#include <doctest.h>

#include <cmath>
#include <vector>

#include "gmfuse/kernels.hpp"
#include "gmfuse/rng.hpp"

using namespace gmfuse;

namespace {

struct BackendGuard {
    kernels::Backend saved;
    BackendGuard() : saved(kernels::active_backend()) {}
    ~BackendGuard() { kernels::force_backend(saved); }
};

std::vector<double> random_vec(Rng& rng, std::size_t n, double lo = -1.0, double hi = 1.0) {
    std::vector<double> v(n);
    for (double& x : v) x = rng.next_double(lo, hi);
    return v;
}

} // namespace

TEST_CASE("scalar kernels match hand-computed values") {
    BackendGuard guard;
    kernels::force_backend(kernels::Backend::scalar);
    const std::vector<double> x = {0.4, 0.1, 0.3};
    CHECK(kernels::sum(x) == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(kernels::prod(x) == doctest::Approx(0.012).epsilon(1e-12));
    CHECK(kernels::min(x) == 0.1);
    CHECK(kernels::max(x) == 0.4);
    const std::vector<double> y = {1.0, 2.0, 3.0};
    CHECK(kernels::dot(x, y) == doctest::Approx(0.4 + 0.2 + 0.9).epsilon(1e-12));
    CHECK(kernels::abs_dev_sum(x, 0.3) == doctest::Approx(0.1 + 0.2 + 0.0).epsilon(1e-12));
    CHECK(kernels::sq_dist(x, y) == doctest::Approx(0.36 + 3.61 + 7.29).epsilon(1e-12));
}

TEST_CASE("avx2 kernels agree with the scalar reference") {
    if (!kernels::cpu_has_avx2()) return;  // nothing to compare on this machine
    BackendGuard guard;
    Rng rng(99);
    // Lengths straddle the vector width and exercise every tail size.
    for (const std::size_t n : {1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 64, 100, 257}) {
        const std::vector<double> a = random_vec(rng, n);
        const std::vector<double> b = random_vec(rng, n);
        const double alpha = rng.next_double(-1.0, 1.0);

        kernels::force_backend(kernels::Backend::scalar);
        const double s_sum = kernels::sum(a);
        const double s_prod = kernels::prod(a);
        const double s_min = kernels::min(a);
        const double s_max = kernels::max(a);
        const double s_dot = kernels::dot(a, b);
        const double s_dev = kernels::abs_dev_sum(a, alpha);
        const double s_dist = kernels::sq_dist(a, b);
        std::vector<double> s_axpy = b;
        kernels::axpy(alpha, a, s_axpy);
        std::vector<double> s_std(n);
        std::vector<double> inv(n, 2.0);
        kernels::standardize(a, b, inv, s_std);

        kernels::force_backend(kernels::Backend::avx2);
        REQUIRE(kernels::active_backend() == kernels::Backend::avx2);
        CHECK(kernels::sum(a) == doctest::Approx(s_sum).epsilon(1e-12));
        CHECK(std::fabs(kernels::prod(a) - s_prod) <= 1e-13 * (1.0 + std::fabs(s_prod)));
        CHECK(kernels::min(a) == s_min);
        CHECK(kernels::max(a) == s_max);
        CHECK(kernels::dot(a, b) == doctest::Approx(s_dot).epsilon(1e-12));
        CHECK(kernels::abs_dev_sum(a, alpha) == doctest::Approx(s_dev).epsilon(1e-12));
        CHECK(kernels::sq_dist(a, b) == doctest::Approx(s_dist).epsilon(1e-12));
        std::vector<double> v_axpy = b;
        kernels::axpy(alpha, a, v_axpy);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(std::fabs(v_axpy[i] - s_axpy[i]) <= 1e-14);
        }
        std::vector<double> v_std(n);
        kernels::standardize(a, b, inv, v_std);
        CHECK(v_std == s_std);
    }
}

TEST_CASE("backend forcing is sticky and honors capabilities") {
    BackendGuard guard;
    kernels::force_backend(kernels::Backend::scalar);
    CHECK(kernels::active_backend() == kernels::Backend::scalar);
    kernels::force_backend(kernels::Backend::avx2);
    if (kernels::cpu_has_avx2()) {
        CHECK(kernels::active_backend() == kernels::Backend::avx2);
    } else {
        CHECK(kernels::active_backend() == kernels::Backend::scalar);
    }
    CHECK(kernels::backend_name(kernels::Backend::scalar) == "scalar");
    CHECK(kernels::backend_name(kernels::Backend::avx2) == "avx2");
}
