#include "minv/kernels.hpp"

namespace minv::kernels {

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

void axpy_scalar(double* y, double alpha, const double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

double sum_scalar(const double* a, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i];
    return acc;
}

double sq_dist_scalar(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double diff = a[i] - b[i];
        acc += diff * diff;
    }
    return acc;
}

#if defined(MINV_HAVE_AVX2)
namespace detail {
double dot_avx2(const double* a, const double* b, std::size_t n);
void axpy_avx2(double* y, double alpha, const double* x, std::size_t n);
double sum_avx2(const double* a, std::size_t n);
double sq_dist_avx2(const double* a, const double* b, std::size_t n);
}  // namespace detail
#endif

namespace {

struct Dispatch {
    double (*dot)(const double*, const double*, std::size_t) = dot_scalar;
    void (*axpy)(double*, double, const double*, std::size_t) = axpy_scalar;
    double (*sum)(const double*, std::size_t) = sum_scalar;
    double (*sq_dist)(const double*, const double*, std::size_t) = sq_dist_scalar;
    const char* name = "scalar";
};

bool cpu_has_avx2() {
#if defined(MINV_HAVE_AVX2)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Dispatch make_dispatch(bool scalar_only) {
    Dispatch d;
#if defined(MINV_HAVE_AVX2)
    if (!scalar_only && cpu_has_avx2()) {
        d.dot = detail::dot_avx2;
        d.axpy = detail::axpy_avx2;
        d.sum = detail::sum_avx2;
        d.sq_dist = detail::sq_dist_avx2;
        d.name = "avx2";
    }
#else
    (void)scalar_only;
#endif
    return d;
}

Dispatch g_dispatch = make_dispatch(false);

}  // namespace

double dot(const double* a, const double* b, std::size_t n) { return g_dispatch.dot(a, b, n); }
void axpy(double* y, double alpha, const double* x, std::size_t n) { g_dispatch.axpy(y, alpha, x, n); }
double sum(const double* a, std::size_t n) { return g_dispatch.sum(a, n); }
double sq_dist(const double* a, const double* b, std::size_t n) { return g_dispatch.sq_dist(a, b, n); }

bool avx2_available() { return cpu_has_avx2(); }

void force_scalar(bool on) { g_dispatch = make_dispatch(on); }

const char* active_backend() { return g_dispatch.name; }

}  // namespace minv::kernels
