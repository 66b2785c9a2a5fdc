#pragma once

#include <cstddef>

// Dense arithmetic kernels backing the metric and simplex inner loops.
// Each operation has a scalar reference implementation and, on x86-64,
// an AVX2 variant. The backend is selected once at runtime from CPU
// features; force_scalar() pins the scalar path (equivalence tests,
// --force-scalar).
namespace minv::kernels {

double dot(const double* a, const double* b, std::size_t n);
void axpy(double* y, double alpha, const double* x, std::size_t n);  // y += alpha*x
double sum(const double* a, std::size_t n);
double sq_dist(const double* a, const double* b, std::size_t n);

// Reference paths, always available.
double dot_scalar(const double* a, const double* b, std::size_t n);
void axpy_scalar(double* y, double alpha, const double* x, std::size_t n);
double sum_scalar(const double* a, std::size_t n);
double sq_dist_scalar(const double* a, const double* b, std::size_t n);

bool avx2_available();

// Not thread safe; call before spawning workers.
void force_scalar(bool on);

const char* active_backend();  // "avx2" or "scalar"

}  // namespace minv::kernels
