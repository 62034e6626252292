#ifndef THINTREE_KERNELS_HPP
#define THINTREE_KERNELS_HPP

#include <cstddef>

// Data-parallel inner loops behind the exhaustive cut scans (Gray-code
// updates of 1_S^T M 1_S maintain M*1_S by column add/sub) and assorted
// dot products. Scalar reference implementations plus AVX2+FMA variants;
// the active backend is chosen once at startup from CPUID and can be
// forced to scalar with THINTREE_FORCE_SCALAR=1.
namespace thintree::kern {

namespace scalar {
void add_inplace(double* y, const double* x, size_t n);
void sub_inplace(double* y, const double* x, size_t n);
void axpy(double* y, double a, const double* x, size_t n);
double dot(const double* a, const double* b, size_t n);
}  // namespace scalar

namespace avx2 {
bool available();
void add_inplace(double* y, const double* x, size_t n);
void sub_inplace(double* y, const double* x, size_t n);
void axpy(double* y, double a, const double* x, size_t n);
double dot(const double* a, const double* b, size_t n);
}  // namespace avx2

// dispatched entry points
void add_inplace(double* y, const double* x, size_t n);
void sub_inplace(double* y, const double* x, size_t n);
void axpy(double* y, double a, const double* x, size_t n);
double dot(const double* a, const double* b, size_t n);

const char* active_backend();  // "avx2" or "scalar"

}  // namespace thintree::kern

#endif
