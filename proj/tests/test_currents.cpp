#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "axcond/field.hpp"

using namespace axcond;

namespace {

// symmetric grid on [-span, span] with constant unit amplitude
FieldProfile flat_field(double span, std::int64_t nodes) {
  std::vector<double> nu(static_cast<std::size_t>(nodes));
  std::vector<std::complex<double>> amp(static_cast<std::size_t>(nodes), {1.0, 0.0});
  for (std::int64_t i = 0; i < nodes; ++i)
    nu[static_cast<std::size_t>(i)] =
        -span + 2.0 * span * static_cast<double>(i) / static_cast<double>(nodes - 1);
  // enforce exact mirror symmetry node by node
  for (std::size_t i = 0; i < nu.size() / 2; ++i) nu[nu.size() - 1 - i] = -nu[i];
  if (nodes % 2 == 1) nu[static_cast<std::size_t>(nodes / 2)] = 0.0;
  return FieldProfile::make(std::move(nu), std::move(amp));
}

BinnedMeasure atom_measure(double lo, double hi, double mass) {
  BinnedMeasure m;
  m.edges = {lo, hi};
  m.mass_mean = {mass};
  m.mass_stderr = {0.0};
  m.n_real = 1;
  m.total_mass = mass;
  m.extension = Extension::even;
  return m;
}

}  // namespace

TEST_CASE("field profile validation") {
  CHECK_THROWS_AS(FieldProfile::make({0.0, 1.0}, {{1, 0}, {1, 0}}),
                  std::invalid_argument);  // not symmetric about zero
  CHECK_THROWS_AS(FieldProfile::make({-1.0, 1.0}, {{1, 0}, {2, 0}}),
                  std::invalid_argument);  // amplitudes not conjugate-paired
  CHECK_THROWS_AS(FieldProfile::make({-1.0}, {{1, 0}}), std::invalid_argument);

  const auto f = FieldProfile::make({-1.0, 0.0, 1.0}, {{2, -1}, {3, 0}, {2, 1}});
  CHECK(f.eval(0.0) == std::complex<double>(3.0, 0.0));
  CHECK(f.eval(0.5) == std::complex<double>(2.5, 0.5));  // linear interpolation
  CHECK(f.eval(2.0) == std::complex<double>(0.0, 0.0));  // zero outside
}

TEST_CASE("in-phase current of a single spectral atom") {
  const double lambda0 = 0.45;
  const auto m = atom_measure(0.4, 0.5, 1.0);
  const auto field = flat_field(1.0, 81);

  std::vector<double> ts;
  for (int i = 0; i <= 40; ++i) ts.push_back(-10.0 + 0.5 * i);
  const auto j = in_phase_current(m, field, ts);

  for (std::size_t i = 0; i < ts.size(); ++i)
    CHECK(j[i] == doctest::Approx(2.0 * std::cos(lambda0 * ts[i])).epsilon(1e-12));
  // t = 0 recovers the total mass of the even-extended measure
  CHECK(in_phase_current(m, field, {0.0})[0] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("out-of-phase current") {
  // atom center 0.4565 never coincides with a node of the grids below, so
  // the off-node displacement safeguard stays out of the convergence path
  const auto m = atom_measure(0.4, 0.513, 1.0);
  const std::vector<double> ts{0.7, 1.9, 3.3};

  SUBCASE("panel refinement converges at second order") {
    const auto ref = out_phase_current(m, flat_field(1.0, 3201), ts);
    double prev_err = 0.0;
    int level = 0;
    for (std::int64_t nodes : {101, 201, 401}) {
      const auto j = out_phase_current(m, flat_field(1.0, nodes), ts);
      double err = 0.0;
      for (std::size_t i = 0; i < ts.size(); ++i)
        err = std::max(err, std::abs(j[i] - ref[i]));
      CHECK(err < 1e-4);
      if (level > 0) CHECK(err < 0.4 * prev_err);  // better than first order
      prev_err = err;
      ++level;
    }
  }
  SUBCASE("odd in time") {
    const auto field = flat_field(1.0, 201);
    const std::vector<double> pm{-3.3, -1.9, -0.7, 0.7, 1.9, 3.3};
    const auto j = out_phase_current(m, field, pm);
    for (int i = 0; i < 3; ++i) CHECK(j[i] == doctest::Approx(-j[5 - i]).epsilon(1e-9));
    const auto j0 = out_phase_current(m, field, {0.0});
    CHECK(std::abs(j0[0]) < 1e-9);
  }
  SUBCASE("in-phase is even in time") {
    const auto field = flat_field(1.0, 201);
    const auto j = in_phase_current(m, field, {-2.1, 2.1});
    CHECK(j[0] == doctest::Approx(j[1]).epsilon(1e-12));
  }
  SUBCASE("atom exactly on a grid node is displaced to a finite result") {
    const auto base = flat_field(1.0, 201);
    const double c = 0.5 * (0.4 + 0.5);
    std::vector<double> nu = base.nu;
    std::vector<std::complex<double>> amp = base.amp;
    std::size_t j = static_cast<std::size_t>(std::lower_bound(nu.begin(), nu.end(), c) -
                                             nu.begin());
    if (j > 0 && c - nu[j - 1] < nu[j] - c) --j;  // nearest node, not next-above
    nu[j] = c;
    nu[nu.size() - 1 - j] = -c;  // keep the mirror exact
    const auto snapped = FieldProfile::make(std::move(nu), std::move(amp));
    const auto out = out_phase_current(atom_measure(0.4, 0.5, 1.0), snapped, {1.3});
    CHECK(std::isfinite(out[0]));
    const auto fine = out_phase_current(atom_measure(0.4, 0.5, 1.0),
                                        flat_field(1.0, 3201), {1.3});
    CHECK(std::abs(out[0] - fine[0]) < 0.05);  // half-panel displacement costs O(h)
  }
  SUBCASE("atom a few ulps away from a grid node stays accurate") {
    // not an exact hit, so the displacement path does not engage; the
    // difference quotient must not amplify the ulp-level offset
    const auto base = flat_field(1.0, 201);
    const double c = 0.5 * (0.4 + 0.5);
    std::vector<double> nu = base.nu;
    std::vector<std::complex<double>> amp = base.amp;
    std::size_t j = static_cast<std::size_t>(std::lower_bound(nu.begin(), nu.end(), c) -
                                             nu.begin());
    if (j > 0 && c - nu[j - 1] < nu[j] - c) --j;
    nu[j] = std::nextafter(std::nextafter(c, 1.0), 1.0);
    nu[nu.size() - 1 - j] = -nu[j];
    const auto grazed = FieldProfile::make(std::move(nu), std::move(amp));
    const auto m = atom_measure(0.4, 0.5, 1.0);
    const auto out = out_phase_current(m, grazed, {-1.3, 1.3});
    const auto fine = out_phase_current(m, flat_field(1.0, 3201), {1.3});
    CHECK(std::abs(out[1] - fine[0]) < 0.01);
    CHECK(out[0] == doctest::Approx(-out[1]).epsilon(1e-9));  // still odd in t
  }
}

TEST_CASE("field grid must cover and resolve the measure") {
  const auto m = atom_measure(0.4, 0.5, 1.0);
  CHECK_THROWS_AS(in_phase_current(m, flat_field(0.3, 31), {0.0}),
                  std::invalid_argument);  // mass outside the grid
  CHECK_THROWS_AS(out_phase_current(m, flat_field(0.3, 31), {0.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(out_phase_current(m, flat_field(1.0, 3), {0.0}),
                  std::invalid_argument);  // panels wider than the bin

  BinnedMeasure plain = m;
  plain.extension = Extension::none;
  CHECK_THROWS_AS(in_phase_current(plain, flat_field(1.0, 81), {0.0}),
                  std::invalid_argument);

  // zero-mass measure gives identically zero currents on any adequate grid
  auto empty = atom_measure(0.4, 0.5, 0.0);
  CHECK(in_phase_current(empty, flat_field(1.0, 81), {1.0})[0] == 0.0);
  CHECK(out_phase_current(empty, flat_field(1.0, 81), {1.0})[0] == 0.0);
}
