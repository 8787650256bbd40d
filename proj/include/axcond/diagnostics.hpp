#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "axcond/disorder.hpp"
#include "axcond/spectral.hpp"

namespace axcond {

struct McJob {
  int d = 1;
  std::int64_t l = 64;
  DisorderModel model;
  std::int64_t n_real = 100;
  int workers = 1;
};

// Monte Carlo estimate of lhs against a rigorous rhs; pass allows three
// standard errors of slack on the sampling noise.
struct BoundCheck {
  double lhs_mean = 0.0;
  double lhs_stderr = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // (rhs - lhs_mean) / rhs
  bool pass = false;
  std::int64_t n = 0;
};

// E{ tr chi_B(H) } / N <= rho_sup * |B|
BoundCheck wegner_check(const McJob& job, Interval window);

// E{ T^2 - T } <= pi^2 rho_sup^2 |I|^2 N^2, T the eigenvalue count in I.
// The normalized statistic (1/N^2) E{T^2 - T} and the squared mean filling
// are reported alongside (their agreement improves with L; report-only).
struct MinamiCheck {
  BoundCheck bound;
  double normalized_lhs = 0.0;
  double mean_filling_sq = 0.0;
};
MinamiCheck minami_check(const McJob& job, Interval window);

// Deterministic per-realization trace bound
//   tr{ P- X1 P+ X1 P- } <= (L^2/4) (tr P+)(tr P-)
struct ChainSingle {
  double lhs = 0.0;
  double rhs = 0.0;
  std::int64_t n_plus = 0, n_minus = 0;
  bool holds = false;
  double margin = 0.0;
};
ChainSingle trace_chain_single(const EigenSystem& eig, const std::vector<double>& c1,
                               Interval plus, Interval minus, std::int64_t side);

// Applies the trace bound at windows I+/I- around (e_f, nu) per realization
// and checks the disorder-averaged endpoint
//   mean (1/N) tr{...} <= (pi^2/4) rho_sup^2 |J|^2 L^(d+2),  |J| = 2 nu.
struct ChainCheck {
  std::int64_t violations = 0;
  double worst_margin = 1.0;
  BoundCheck end_to_end;
  std::int64_t n = 0;
};
ChainCheck chain_check(const McJob& job, double e_f, double nu);

// Disorder-averaged decay profile against torus graph distance, distances
// capped at L/2 - 2 to stay clear of wrap-around contamination.
struct DecayCurve {
  std::vector<std::int64_t> dist;
  std::vector<double> mean;
  std::vector<double> stderr_;
  std::int64_t n_real = 0;
  std::vector<std::string> warnings;
};

// Log-linear fit mean(dist) ~ k * exp(-order * dist / ell) over distances
// >= min_dist whose mean exceeds mean_floor (floor = 0 keeps everything
// positive). The curve is the order-th moment of an amplitude decaying on
// length ell, so the fitted log-slope is -order/ell; order = 1 reads the
// slope directly.
struct DecayFit {
  double k_hat = 0.0;
  double ell_hat = 0.0;
  double slope = 0.0;
  double slope_stderr = 0.0;
  double r2 = 0.0;
  std::int64_t points_used = 0;
};
DecayFit fit_exponential_decay(const DecayCurve& curve, std::int64_t min_dist,
                               double mean_floor, double moment_order = 1.0);

// E{ |<delta_0, (H - E - i eta)^{-1} delta_x>|^s }, s in (0, 1/4), via sparse
// direct solves with residual <= 1e-10 (one retry at 1.5*eta on breakdown).
struct GreenJob {
  McJob mc;
  double e = 0.0;
  double eta = 1e-3;
  double s = 0.2;
};
DecayCurve green_decay_curve(const GreenJob& job);

// E{ |P(0,x)|^p } for the Fermi projection P = chi_(-inf, e_f](H).
struct FermiJob {
  McJob mc;
  double e_f = 0.0;
  double p = 1.0;
};
DecayCurve fermi_decay_curve(const FermiJob& job);

// Nearest-neighbor level spacings inside the window, unfolded by a local
// mean spacing (centered moving window of 17 spacings), pooled over
// realizations. ks_exp is the Kolmogorov-Smirnov distance to 1 - exp(-x);
// the histogram mass sums to 1 with overflow clipped into the last bin.
struct SpacingJob {
  McJob mc;
  Interval window{-1.0, 1.0};
  std::int64_t hist_bins = 60;
  double hist_max = 6.0;
};
struct SpacingStats {
  std::vector<double> edges;
  std::vector<double> hist;
  double ks_exp = 0.0;
  std::int64_t n_spacings = 0;
};
SpacingStats level_spacing_stats(const SpacingJob& job);

}  // namespace axcond
