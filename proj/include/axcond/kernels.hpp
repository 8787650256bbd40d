#pragma once
#include <cstddef>

// Hand-vectorized inner loops of the estimators. Every entry point has a
// scalar reference implementation and, on x86-64 with AVX2, a SIMD variant.
// The active table is resolved once per process: the AXCOND_KERNELS
// environment variable ("scalar" or "avx2") wins, otherwise CPU detection.
// Variants are equivalence-tested against the scalar reference; results may
// differ by reduction order at the level of rounding error.

namespace axcond::kernels {

struct Table {
  const char* name;

  // sum of x_i^2
  double (*sum_sq)(const double* x, std::size_t n);

  // sum of (v_i / d_i)^2
  double (*sum_sq_ratio)(const double* v, const double* d, std::size_t n);

  // out_i = scale * v_i^2 / d_i
  void (*scaled_sq_over)(const double* v, const double* d, double scale,
                         std::size_t n, double* out);

  // sum of m_k / (c_k + nu - i*eta), accumulated into (*re, *im)
  void (*cauchy_sum)(const double* m, const double* c, std::size_t n,
                     double nu, double eta, double* re, double* im);
};

const Table& scalar_table();
const Table* avx2_table();  // nullptr if unsupported by this build or CPU
const Table& active();

}  // namespace axcond::kernels
