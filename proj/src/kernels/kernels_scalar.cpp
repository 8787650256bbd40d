#include "axcond/kernels.hpp"

namespace axcond::kernels {
namespace {

double sum_sq_scalar(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * x[i];
  return acc;
}

double sum_sq_ratio_scalar(const double* v, const double* d, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = v[i] / d[i];
    acc += t * t;
  }
  return acc;
}

void scaled_sq_over_scalar(const double* v, const double* d, double scale,
                           std::size_t n, double* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = scale * (v[i] * v[i]) / d[i];
}

void cauchy_sum_scalar(const double* m, const double* c, std::size_t n,
                       double nu, double eta, double* re, double* im) {
  // 1/(x - i*eta) = (x + i*eta) / (x^2 + eta^2)
  double ar = 0.0, ai = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = c[i] + nu;
    const double den = x * x + eta * eta;
    ar += m[i] * x / den;
    ai += m[i] * eta / den;
  }
  *re += ar;
  *im += ai;
}

}  // namespace

const Table& scalar_table() {
  static const Table t{"scalar", sum_sq_scalar, sum_sq_ratio_scalar,
                       scaled_sq_over_scalar, cauchy_sum_scalar};
  return t;
}

}  // namespace axcond::kernels
