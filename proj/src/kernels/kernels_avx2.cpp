#include "axcond/kernels.hpp"

#include <immintrin.h>

namespace axcond::kernels {
namespace {

inline double hadd(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

double sum_sq_avx2(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double s = hadd(acc);
  for (; i < n; ++i) s += x[i] * x[i];
  return s;
}

double sum_sq_ratio_avx2(const double* v, const double* d, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d t = _mm256_div_pd(_mm256_loadu_pd(v + i), _mm256_loadu_pd(d + i));
    acc = _mm256_fmadd_pd(t, t, acc);
  }
  double s = hadd(acc);
  for (; i < n; ++i) {
    const double t = v[i] / d[i];
    s += t * t;
  }
  return s;
}

void scaled_sq_over_avx2(const double* v, const double* d, double scale,
                         std::size_t n, double* out) {
  const __m256d sc = _mm256_set1_pd(scale);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a = _mm256_loadu_pd(v + i);
    const __m256d num = _mm256_mul_pd(sc, _mm256_mul_pd(a, a));
    _mm256_storeu_pd(out + i, _mm256_div_pd(num, _mm256_loadu_pd(d + i)));
  }
  // same association as the scalar kernel so the outputs match bit for bit
  for (; i < n; ++i) out[i] = scale * (v[i] * v[i]) / d[i];
}

void cauchy_sum_avx2(const double* m, const double* c, std::size_t n,
                     double nu, double eta, double* re, double* im) {
  const __m256d vnu = _mm256_set1_pd(nu);
  const __m256d veta = _mm256_set1_pd(eta);
  const __m256d eta2 = _mm256_mul_pd(veta, veta);
  __m256d ar = _mm256_setzero_pd(), ai = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x = _mm256_add_pd(_mm256_loadu_pd(c + i), vnu);
    const __m256d den = _mm256_fmadd_pd(x, x, eta2);
    const __m256d w = _mm256_div_pd(_mm256_loadu_pd(m + i), den);
    ar = _mm256_fmadd_pd(w, x, ar);
    ai = _mm256_fmadd_pd(w, veta, ai);
  }
  double sr = hadd(ar), si = hadd(ai);
  for (; i < n; ++i) {
    const double x = c[i] + nu;
    const double den = x * x + eta * eta;
    sr += m[i] * x / den;
    si += m[i] * eta / den;
  }
  *re += sr;
  *im += si;
}

}  // namespace

const Table* avx2_table_impl() {
  static const Table t{"avx2", sum_sq_avx2, sum_sq_ratio_avx2,
                       scaled_sq_over_avx2, cauchy_sum_avx2};
  return &t;
}

}  // namespace axcond::kernels
