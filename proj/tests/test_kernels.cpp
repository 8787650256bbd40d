#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "axcond/kernels.hpp"

using namespace axcond;

namespace {
std::vector<double> randvec(std::size_t n, std::uint64_t seed, double lo, double hi) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = u(gen);
  return v;
}
}  // namespace

TEST_CASE("scalar kernels on known inputs") {
  const auto& t = kernels::scalar_table();
  const double x[] = {1.0, -2.0, 3.0};
  CHECK(t.sum_sq(x, 3) == doctest::Approx(14.0).epsilon(1e-15));
  CHECK(t.sum_sq(x, 0) == 0.0);

  const double v[] = {2.0, 3.0};
  const double d[] = {4.0, 6.0};
  CHECK(t.sum_sq_ratio(v, d, 2) == doctest::Approx(0.25 + 0.25).epsilon(1e-15));

  double out[2];
  t.scaled_sq_over(v, d, 10.0, 2, out);
  CHECK(out[0] == doctest::Approx(10.0).epsilon(1e-15));
  CHECK(out[1] == doctest::Approx(15.0).epsilon(1e-15));

  // single term: m / (c + nu - i eta) at c=1, nu=0, eta=1 is m (1 + i) / 2
  const double m[] = {2.0};
  const double c[] = {1.0};
  double re = 0.0, im = 0.0;
  t.cauchy_sum(m, c, 1, 0.0, 1.0, &re, &im);
  CHECK(re == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(im == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("vector kernels match the scalar reference") {
  const kernels::Table* simd = kernels::avx2_table();
  if (!simd) {
    MESSAGE("no vector unit available in this build, dispatch falls back to scalar");
    CHECK(std::string(kernels::active().name) == "scalar");
    return;
  }
  const auto& ref = kernels::scalar_table();
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 8u, 17u, 1000u}) {
    const auto v = randvec(n, 11 + n, -3.0, 3.0);
    const auto d = randvec(n, 97 + n, 0.1, 4.0);

    CHECK(simd->sum_sq(v.data(), n) ==
          doctest::Approx(ref.sum_sq(v.data(), n)).epsilon(1e-13));
    CHECK(simd->sum_sq_ratio(v.data(), d.data(), n) ==
          doctest::Approx(ref.sum_sq_ratio(v.data(), d.data(), n)).epsilon(1e-13));

    std::vector<double> a(n), b(n);
    ref.scaled_sq_over(v.data(), d.data(), 3.5, n, a.data());
    simd->scaled_sq_over(v.data(), d.data(), 3.5, n, b.data());
    for (std::size_t i = 0; i < n; ++i) CHECK(a[i] == b[i]);  // elementwise, exact

    double re0 = 0, im0 = 0, re1 = 0, im1 = 0;
    ref.cauchy_sum(v.data(), d.data(), n, 0.3, 0.05, &re0, &im0);
    simd->cauchy_sum(v.data(), d.data(), n, 0.3, 0.05, &re1, &im1);
    CHECK(re1 == doctest::Approx(re0).epsilon(1e-13));
    CHECK(im1 == doctest::Approx(im0).epsilon(1e-13));
  }
}

TEST_CASE("active table is one of the registered implementations") {
  const std::string name = kernels::active().name;
  CHECK((name == "scalar" || name == "avx2"));
}
