#include <doctest.h>

#include <cmath>

#include "axcond/diagnostics.hpp"
#include "axcond/measures.hpp"
#include "axcond/operators.hpp"

using namespace axcond;

namespace {
McJob small_job(int d, std::int64_t l, double w, std::uint64_t seed, std::int64_t n,
                int workers = 1) {
  McJob job;
  job.d = d;
  job.l = l;
  job.model = DisorderModel::uniform(w, seed);
  job.n_real = n;
  job.workers = workers;
  return job;
}
}  // namespace

TEST_CASE("eigenvalue count bound") {
  const auto job = small_job(1, 64, 4.0, 5, 50);

  SUBCASE("interval disjoint from the spectrum") {
    const auto b = wegner_check(job, {50.0, 51.0});
    CHECK(b.lhs_mean == 0.0);
    CHECK(b.pass);
    CHECK(b.rhs == doctest::Approx(0.25 * 1.0));
  }
  SUBCASE("bulk interval stays below the bound") {
    const auto b = wegner_check(job, {-0.5, 0.5});
    CHECK(b.rhs == doctest::Approx(0.25 * 1.0));
    CHECK(b.lhs_mean > 0.0);  // the band center is populated
    CHECK(b.pass);
    CHECK(b.n == 50);
  }
  SUBCASE("full-spectrum interval saturates the counting measure") {
    const auto b = wegner_check(job, {-10.0, 10.0});
    CHECK(b.lhs_mean == doctest::Approx(1.0));  // every eigenvalue counted
  }
}

TEST_CASE("eigenvalue pair bound") {
  const auto job = small_job(1, 64, 4.0, 5, 50);
  const auto m = minami_check(job, {-0.1, 0.1});
  CHECK(m.bound.rhs ==
        doctest::Approx(M_PI * M_PI * 0.0625 * 0.04 * 4096.0).epsilon(1e-12));
  CHECK(m.bound.pass);
  CHECK(m.bound.lhs_mean >= 0.0);  // T^2 - T is nonnegative for integer T
  CHECK(m.normalized_lhs == doctest::Approx(m.bound.lhs_mean / 4096.0));
  CHECK(m.mean_filling_sq >= 0.0);
}

TEST_CASE("projected position trace bound") {
  const auto lat = TorusLattice::build(1, 16);
  const auto model = DisorderModel::uniform(4.0, 17);
  const auto eig = diagonalize(build_hamiltonian(lat, sample_potential(model, lat, 0)));
  const auto c1 = lat.centered_positions();

  SUBCASE("single realization, explicit arithmetic") {
    const Interval plus{0.0, 1.0}, minus{-1.0, 0.0};
    const auto chain = trace_chain_single(eig, c1, plus, minus, 16);
    const auto np = window_indices(eig, plus).count();
    const auto nm = window_indices(eig, minus).count();
    CHECK(chain.n_plus == np);
    CHECK(chain.n_minus == nm);
    CHECK(chain.rhs == doctest::Approx(0.25 * 256.0 * static_cast<double>(np) *
                                       static_cast<double>(nm)));
    // lhs is N times the rectangle statistic
    const double psi = psi_position_single(eig, c1, plus, minus);
    CHECK(chain.lhs == doctest::Approx(16.0 * psi).epsilon(1e-12));
    CHECK(chain.holds);
    CHECK(chain.lhs <= chain.rhs + 1e-9);
  }
  SUBCASE("empty window makes both sides zero") {
    const auto chain = trace_chain_single(eig, c1, {30.0, 31.0}, {-1.0, 0.0}, 16);
    CHECK(chain.lhs == 0.0);
    CHECK(chain.rhs == 0.0);
    CHECK(chain.holds);
  }
  SUBCASE("monte carlo sweep has no violations") {
    const auto res = chain_check(small_job(1, 32, 4.0, 23, 100), 0.0, 0.5);
    CHECK(res.violations == 0);
    CHECK(res.n == 100);
    CHECK(res.worst_margin >= 0.0);
    CHECK(res.end_to_end.rhs ==
          doctest::Approx(0.25 * M_PI * M_PI * 0.0625 * 1.0 * std::pow(32.0, 3)));
    CHECK(res.end_to_end.pass);
  }
}

TEST_CASE("resolvent moment decay") {
  SUBCASE("rejects out-of-range moment orders and tiny lattices") {
    GreenJob bad;
    bad.mc = small_job(1, 64, 4.0, 1, 1);
    bad.s = 0.0;
    CHECK_THROWS_AS(green_decay_curve(bad), std::invalid_argument);
    bad.s = 0.25;
    CHECK_THROWS_AS(green_decay_curve(bad), std::invalid_argument);
    bad.s = 0.2;
    bad.eta = 0.0;
    CHECK_THROWS_AS(green_decay_curve(bad), std::invalid_argument);
    bad.eta = 1e-3;
    bad.mc.l = 6;
    CHECK_THROWS_AS(green_decay_curve(bad), std::invalid_argument);
  }
  SUBCASE("strong disorder pins the amplitude to the source") {
    GreenJob job;
    job.mc = small_job(1, 64, 50.0, 7, 40);
    const auto curve = green_decay_curve(job);
    CHECK(curve.warnings.empty());
    CHECK(curve.n_real == 40);
    // coarse monotonicity of the disorder mean
    CHECK(curve.mean[2] > curve.mean[10]);
    CHECK(curve.mean[10] > curve.mean[25]);

    const auto fit = fit_exponential_decay(curve, 2, 0.0, job.s);
    CHECK(fit.r2 > 0.99);
    CHECK(fit.ell_hat > 0.0);
    CHECK(fit.ell_hat < 1.0);  // under one lattice spacing at this disorder
    CHECK(fit.k_hat > 0.0);
  }
  SUBCASE("fitted length is stable in the broadening") {
    GreenJob a;
    a.mc = small_job(1, 128, 12.0, 29, 60);
    GreenJob b = a;
    b.eta = 2e-3;
    const auto fa = fit_exponential_decay(green_decay_curve(a), 2, 0.0, a.s);
    const auto fb = fit_exponential_decay(green_decay_curve(b), 2, 0.0, b.s);
    const double sa = a.s * fa.slope_stderr / (fa.slope * fa.slope);
    const double sb = b.s * fb.slope_stderr / (fb.slope * fb.slope);
    CHECK(std::abs(fa.ell_hat - fb.ell_hat) <
          3.0 * std::sqrt(sa * sa + sb * sb) + 1e-3);
  }
}

TEST_CASE("fermi projection decay") {
  SUBCASE("fermi energy below the spectrum gives the zero kernel") {
    FermiJob job;
    job.mc = small_job(1, 32, 4.0, 3, 2);
    job.e_f = -100.0;
    const auto curve = fermi_decay_curve(job);
    for (double m : curve.mean) CHECK(m == 0.0);
    // nothing to fit: every mean sits at zero
    CHECK_THROWS_AS(fit_exponential_decay(curve, 2, 0.0, job.p), std::invalid_argument);
  }
  SUBCASE("fermi energy above the spectrum gives the identity") {
    FermiJob job;
    job.mc = small_job(1, 32, 4.0, 3, 2);
    job.e_f = 100.0;
    const auto curve = fermi_decay_curve(job);
    CHECK(curve.mean[0] == doctest::Approx(1.0).epsilon(1e-9));
    for (std::size_t i = 2; i < curve.mean.size(); ++i) CHECK(curve.mean[i] < 1e-10);
  }
  SUBCASE("half filling decays exponentially under disorder") {
    FermiJob job;
    job.mc = small_job(1, 128, 8.0, 31, 50);
    const auto curve = fermi_decay_curve(job);
    // dense-solver noise floors the far tail; the floor trims it before the fit
    const auto fit = fit_exponential_decay(curve, 2, 1e-12, job.p);
    CHECK(fit.r2 > 0.95);
    CHECK(fit.ell_hat > 0.0);
    CHECK(fit.ell_hat < 10.0);
  }
  SUBCASE("rejects nonpositive moment order") {
    FermiJob job;
    job.mc = small_job(1, 32, 4.0, 3, 1);
    job.p = 0.0;
    CHECK_THROWS_AS(fermi_decay_curve(job), std::invalid_argument);
  }
}

TEST_CASE("decay fit mechanics") {
  DecayCurve synth;
  for (std::int64_t d = 0; d <= 20; ++d) {
    synth.dist.push_back(d);
    synth.mean.push_back(2.0 * std::exp(-0.4 * static_cast<double>(d)));
    synth.stderr_.push_back(0.0);
  }
  synth.n_real = 1;

  SUBCASE("exact recovery on clean input") {
    const auto fit = fit_exponential_decay(synth, 2, 0.0, 1.0);
    CHECK(fit.slope == doctest::Approx(-0.4).epsilon(1e-12));
    CHECK(fit.ell_hat == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(fit.k_hat == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(fit.r2 == doctest::Approx(1.0));
    CHECK(fit.points_used == 19);
  }
  SUBCASE("moment order rescales the length, not the slope") {
    const auto f1 = fit_exponential_decay(synth, 2, 0.0, 1.0);
    const auto f5 = fit_exponential_decay(synth, 2, 0.0, 0.5);
    CHECK(f5.slope == doctest::Approx(f1.slope));
    CHECK(f5.ell_hat == doctest::Approx(0.5 * f1.ell_hat));
  }
  SUBCASE("floor drops the contaminated tail") {
    auto noisy = synth;
    for (std::size_t i = 15; i < noisy.mean.size(); ++i) noisy.mean[i] = 1e-15;
    const auto fit = fit_exponential_decay(noisy, 2, 1e-12, 1.0);
    CHECK(fit.points_used == 13);
    CHECK(fit.slope == doctest::Approx(-0.4).epsilon(1e-10));
  }
  SUBCASE("refuses underdetermined fits and bad orders") {
    DecayCurve two;
    two.dist = {0, 1, 2, 3};
    two.mean = {1.0, 0.5, 0.0, 0.0};
    two.stderr_ = {0.0, 0.0, 0.0, 0.0};
    CHECK_THROWS_AS(fit_exponential_decay(two, 0, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(fit_exponential_decay(synth, 2, 0.0, 0.0), std::invalid_argument);
  }
}

TEST_CASE("level spacing statistics") {
  SUBCASE("near-degenerate clean spectrum is far from exponential spacings") {
    SpacingJob job;
    job.mc = small_job(1, 256, 0.01, 11, 20);
    job.window = {-1.5, 1.5};
    const auto st = level_spacing_stats(job);
    CHECK(st.n_spacings > 0);
    CHECK(st.ks_exp > 0.2);
  }
  SUBCASE("strong disorder approaches exponential spacings") {
    SpacingJob job;
    job.mc = small_job(1, 256, 10.0, 13, 100);
    job.window = {-1.0, 1.0};
    const auto st = level_spacing_stats(job);
    CHECK(st.n_spacings > 1000);
    CHECK(st.ks_exp < 0.05);
    double total = 0.0;
    for (double h : st.hist) total += h;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("window validation") {
    SpacingJob job;
    job.mc = small_job(1, 64, 4.0, 1, 1);
    job.window = {1.0, -1.0};
    CHECK_THROWS_AS(level_spacing_stats(job), std::invalid_argument);
  }
}
