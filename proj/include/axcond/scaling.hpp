#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "axcond/diagnostics.hpp"
#include "axcond/operators.hpp"

namespace axcond {

// Volume rule tying the box to the frequency: max(3, ceil(factor * ell * log(1/nu))).
// Requires nu in (0, 1), ell > 0, factor > 0.
std::int64_t choose_side(double nu, double ell, double factor);

// Leading bound constant C^(d+2) * pi^2 * rho_sup^2 * ell^(d+2); the observed
// y(nu) is compared against constant * nu^2 * log(1/nu)^(d+2).
double scaling_bound_constant(double c, int d, double rho_sup, double ell);

struct ScalingPoint {
  double nu = 0.0;
  std::int64_t side = 0;
  std::int64_t n_real = 0;
  double y_mean = 0.0;
  double y_stderr = 0.0;
  double ratio_205 = 0.0;
  double ratio_36 = 0.0;
};

// Fit y = c * nu^2 * log(1/nu)^gamma by least squares in the transformed
// coordinates z = log(y) - 2 log(nu) against x = log(log(1/nu)); weighted by
// 1/var(z) when standard errors are supplied, unweighted otherwise.
struct ScalingFit {
  double c_hat = 0.0;
  double gamma_hat = 0.0;
  double gamma_stderr = 0.0;
  double r2 = 0.0;
  bool weighted = false;
  std::int64_t points_used = 0;
};
ScalingFit fit_scaling_exponent(const std::vector<double>& nu, const std::vector<double>& y,
                                const std::vector<double>& y_stderr,
                                std::vector<std::string>* warnings);

// Frequency sweep of the window observable with the box side chosen per
// frequency. cap_mode "drop" skips frequencies whose side exceeds the cap,
// "clamp" runs them at the cap; both record a warning. The localization
// length is taken from ell_override when positive, otherwise estimated from
// the fractional-moment decay fit on a fixed side-capped box with a seed
// derived from the master seed.
struct MottJob {
  int d = 1;
  DisorderModel model;
  double e_f = 0.0;
  std::vector<double> nu_grid;
  double factor = 205.0;
  std::int64_t cap = 1024;
  bool clamp = false;
  double ell_override = 0.0;
  double ell_eta = 1e-3;
  double ell_s = 0.2;
  std::int64_t n_real = 200;
  int workers = 1;
  std::string observable = "psi";  // "psi" (window rectangle) or "sigma_bar"
  VelocityVariant variant = VelocityVariant::commutator;
};

struct MottResult {
  std::vector<ScalingPoint> points;
  ScalingFit fit;
  bool fit_valid = false;
  double ell_used = 0.0;
  std::int64_t degenerate_pairs = 0;
  std::vector<std::string> warnings;
};
MottResult mott_sweep(const MottJob& job);

}  // namespace axcond
