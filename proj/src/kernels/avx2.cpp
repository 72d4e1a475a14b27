// AVX2 variants. Compiled with -mavx2 only; reached through the dispatch
// table after a CPUID check. Multiplies and adds stay separate (no FMA) so the
// elementwise kernels round exactly like the scalar reference.

#include <immintrin.h>

#include <cmath>

#include "tables.hpp"

namespace escom::kernels::detail {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline __m256d abs_pd(__m256d v) {
  return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

double dot(const double* x, const double* y, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_add_pd(
        acc0, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(_mm256_loadu_pd(x + i + 4),
                                             _mm256_loadu_pd(y + i + 4)));
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_add_pd(
        acc0, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

double dot_abs(const double* x, const double* y, std::size_t n,
               double* abs_sum) {
  __m256d acc = _mm256_setzero_pd();
  __m256d aacc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d p =
        _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
    acc = _mm256_add_pd(acc, p);
    aacc = _mm256_add_pd(aacc, abs_pd(p));
  }
  double s = hsum(acc);
  double a = hsum(aacc);
  for (; i < n; ++i) {
    const double p = x[i] * y[i];
    s += p;
    a += std::fabs(p);
  }
  *abs_sum = a;
  return s;
}

double norm_sq(const double* x, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d a = _mm256_loadu_pd(x + i);
    const __m256d b = _mm256_loadu_pd(x + i + 4);
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(a, a));
    acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(b, b));
  }
  for (; i + 4 <= n; i += 4) {
    const __m256d a = _mm256_loadu_pd(x + i);
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(a, a));
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += x[i] * x[i];
  return s;
}

double dist_sq(const double* x, const double* y, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d =
        _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
  }
  double s = hsum(acc);
  for (; i < n; ++i) {
    const double d = x[i] - y[i];
    s += d * d;
  }
  return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d a = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d r = _mm256_add_pd(
        _mm256_loadu_pd(y + i), _mm256_mul_pd(a, _mm256_loadu_pd(x + i)));
    _mm256_storeu_pd(y + i, r);
  }
  for (; i < n; ++i) y[i] = y[i] + alpha * x[i];
}

void add_scaled(const double* x, double alpha, const double* y, double* out,
                std::size_t n) {
  const __m256d a = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d r = _mm256_add_pd(
        _mm256_loadu_pd(x + i), _mm256_mul_pd(a, _mm256_loadu_pd(y + i)));
    _mm256_storeu_pd(out + i, r);
  }
  for (; i < n; ++i) out[i] = x[i] + alpha * y[i];
}

double clamp(const double* lo, const double* hi, double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    // max(lo, v) returns v on ties and NaN, matching the scalar select.
    __m256d c = _mm256_max_pd(_mm256_loadu_pd(lo + i), v);
    c = _mm256_min_pd(_mm256_loadu_pd(hi + i), c);
    const __m256d d = _mm256_sub_pd(v, c);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
    _mm256_storeu_pd(x + i, c);
  }
  double moved = hsum(acc);
  for (; i < n; ++i) {
    double c = x[i] < lo[i] ? lo[i] : x[i];
    c = c > hi[i] ? hi[i] : c;
    const double d = x[i] - c;
    moved += d * d;
    x[i] = c;
  }
  return moved;
}

}  // namespace

const Table kAvx2Table{
    Isa::avx2, "avx2", dot, dot_abs, norm_sq, dist_sq, axpy, add_scaled, clamp,
};

}  // namespace escom::kernels::detail
