#include "thintree/kernels.hpp"

#include <cstdlib>
#include <immintrin.h>

namespace thintree::kern {

namespace scalar {

void add_inplace(double* y, const double* x, size_t n) {
  for (size_t i = 0; i < n; ++i) y[i] += x[i];
}

void sub_inplace(double* y, const double* x, size_t n) {
  for (size_t i = 0; i < n; ++i) y[i] -= x[i];
}

void axpy(double* y, double a, const double* x, size_t n) {
  for (size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

double dot(const double* a, const double* b, size_t n) {
  double s = 0.0;
  for (size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

}  // namespace scalar

namespace avx2 {

bool available() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

#if defined(__x86_64__) || defined(__i386__)

__attribute__((target("avx2,fma"))) void add_inplace(double* y, const double* x, size_t n) {
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vy = _mm256_loadu_pd(y + i);
    __m256d vx = _mm256_loadu_pd(x + i);
    _mm256_storeu_pd(y + i, _mm256_add_pd(vy, vx));
  }
  for (; i < n; ++i) y[i] += x[i];
}

__attribute__((target("avx2,fma"))) void sub_inplace(double* y, const double* x, size_t n) {
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vy = _mm256_loadu_pd(y + i);
    __m256d vx = _mm256_loadu_pd(x + i);
    _mm256_storeu_pd(y + i, _mm256_sub_pd(vy, vx));
  }
  for (; i < n; ++i) y[i] -= x[i];
}

__attribute__((target("avx2,fma"))) void axpy(double* y, double a, const double* x, size_t n) {
  __m256d va = _mm256_set1_pd(a);
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vy = _mm256_loadu_pd(y + i);
    __m256d vx = _mm256_loadu_pd(x + i);
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, vx, vy));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

__attribute__((target("avx2,fma"))) double dot(const double* a, const double* b, size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  }
  __m256d acc = _mm256_add_pd(acc0, acc1);
  alignas(32) double buf[4];
  _mm256_store_pd(buf, acc);
  double s = buf[0] + buf[1] + buf[2] + buf[3];
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

#else

void add_inplace(double* y, const double* x, size_t n) { scalar::add_inplace(y, x, n); }
void sub_inplace(double* y, const double* x, size_t n) { scalar::sub_inplace(y, x, n); }
void axpy(double* y, double a, const double* x, size_t n) { scalar::axpy(y, a, x, n); }
double dot(const double* a, const double* b, size_t n) { return scalar::dot(a, b, n); }

#endif

}  // namespace avx2

namespace {

struct Dispatch {
  void (*add)(double*, const double*, size_t);
  void (*sub)(double*, const double*, size_t);
  void (*axpy)(double*, double, const double*, size_t);
  double (*dot)(const double*, const double*, size_t);
  const char* name;
};

Dispatch pick() {
  const char* force = std::getenv("THINTREE_FORCE_SCALAR");
  bool useSimd = avx2::available() && !(force && force[0] == '1');
  if (useSimd) {
    return {avx2::add_inplace, avx2::sub_inplace, avx2::axpy, avx2::dot, "avx2"};
  }
  return {scalar::add_inplace, scalar::sub_inplace, scalar::axpy, scalar::dot, "scalar"};
}

const Dispatch& table() {
  static const Dispatch d = pick();
  return d;
}

}  // namespace

void add_inplace(double* y, const double* x, size_t n) { table().add(y, x, n); }
void sub_inplace(double* y, const double* x, size_t n) { table().sub(y, x, n); }
void axpy(double* y, double a, const double* x, size_t n) { table().axpy(y, a, x, n); }
double dot(const double* a, const double* b, size_t n) { return table().dot(a, b, n); }
const char* active_backend() { return table().name; }

}  // namespace thintree::kern
