#include "axcond/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "axcond/measures.hpp"
#include "axcond/runner.hpp"

namespace axcond {

std::int64_t choose_side(double nu, double ell, double factor) {
  if (!(nu > 0.0 && nu < 1.0))
    throw std::invalid_argument("choose_side needs nu in (0, 1), got " + std::to_string(nu));
  if (!(ell > 0.0)) throw std::invalid_argument("choose_side needs ell > 0");
  if (!(factor > 0.0)) throw std::invalid_argument("choose_side needs factor > 0");
  const double raw = std::ceil(factor * ell * std::log(1.0 / nu));
  return std::max<std::int64_t>(3, static_cast<std::int64_t>(raw));
}

double scaling_bound_constant(double c, int d, double rho_sup, double ell) {
  return std::pow(c, d + 2) * std::numbers::pi * std::numbers::pi * rho_sup * rho_sup *
         std::pow(ell, d + 2);
}

ScalingFit fit_scaling_exponent(const std::vector<double>& nu, const std::vector<double>& y,
                                const std::vector<double>& y_stderr,
                                std::vector<std::string>* warnings) {
  if (nu.size() != y.size() || (!y_stderr.empty() && y_stderr.size() != y.size()))
    throw std::invalid_argument("scaling fit input sizes do not match");

  std::vector<double> x, z, w;
  bool weighted = !y_stderr.empty();
  if (weighted)
    for (double e : y_stderr)
      if (!(e > 0.0) || std::isnan(e)) {
        weighted = false;
        break;
      }

  double xmin = std::numeric_limits<double>::infinity(), xmax = 0.0;
  for (std::size_t i = 0; i < nu.size(); ++i) {
    if (!(nu[i] > 0.0 && nu[i] < 1.0) || !(y[i] > 0.0)) {
      if (warnings)
        warnings->push_back("scaling fit dropped point nu=" + std::to_string(nu[i]) +
                            " (needs nu in (0,1) and y > 0)");
      continue;
    }
    const double lg = std::log(1.0 / nu[i]);
    xmin = std::min(xmin, lg);
    xmax = std::max(xmax, lg);
    x.push_back(std::log(lg));
    z.push_back(std::log(y[i]) - 2.0 * std::log(nu[i]));
    // var(log y) ~ (stderr/y)^2
    w.push_back(weighted ? (y[i] / y_stderr[i]) * (y[i] / y_stderr[i]) : 1.0);
  }

  std::vector<double> distinct(x);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() < 2)
    throw std::invalid_argument("scaling fit needs at least two distinct usable frequencies");
  if (warnings && xmax / xmin < 2.0)
    warnings->push_back("gamma weakly identified: log(1/nu) spans less than a factor of 2");

  const std::size_t n = x.size();
  double sw = 0.0, swx = 0.0, swz = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sw += w[i];
    swx += w[i] * x[i];
    swz += w[i] * z[i];
  }
  const double xbar = swx / sw, zbar = swz / sw;
  double sxx = 0.0, sxz = 0.0, szz = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += w[i] * (x[i] - xbar) * (x[i] - xbar);
    sxz += w[i] * (x[i] - xbar) * (z[i] - zbar);
    szz += w[i] * (z[i] - zbar) * (z[i] - zbar);
  }

  ScalingFit f;
  f.weighted = weighted;
  f.points_used = static_cast<std::int64_t>(n);
  f.gamma_hat = sxz / sxx;
  const double intercept = zbar - f.gamma_hat * xbar;
  f.c_hat = std::exp(intercept);
  double ssr = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double resid = z[i] - (intercept + f.gamma_hat * x[i]);
    ssr += w[i] * resid * resid;
  }
  f.r2 = szz > 0.0 ? 1.0 - ssr / szz : 1.0;
  if (weighted)
    f.gamma_stderr = std::sqrt(1.0 / sxx);
  else
    f.gamma_stderr = n > 2 ? std::sqrt(ssr / static_cast<double>(n - 2) / sxx)
                           : std::numeric_limits<double>::quiet_NaN();
  return f;
}

MottResult mott_sweep(const MottJob& job) {
  if (job.nu_grid.empty()) throw std::invalid_argument("mott sweep needs a frequency grid");
  for (double nu : job.nu_grid)
    if (!(nu > 0.0 && nu < 1.0))
      throw std::invalid_argument("mott sweep frequencies must lie in (0, 1), got " +
                                  std::to_string(nu));
  if (job.observable != "psi" && job.observable != "sigma_bar")
    throw std::invalid_argument("unknown mott observable: " + job.observable);
  if (job.n_real < 1) throw std::invalid_argument("need at least one realization");

  MottResult out;

  if (job.ell_override > 0.0) {
    out.ell_used = job.ell_override;
  } else {
    GreenJob gj;
    gj.mc.d = job.d;
    gj.mc.l = std::min<std::int64_t>(job.cap, 256);
    DisorderModel sub = job.model;
    sub.master_seed = realization_seed(job.model.master_seed, 999983);
    gj.mc.model = sub;
    gj.mc.n_real = 100;
    gj.mc.workers = job.workers;
    gj.e = job.e_f;
    gj.eta = job.ell_eta;
    gj.s = job.ell_s;
    const DecayCurve curve = green_decay_curve(gj);
    const DecayFit fit = fit_exponential_decay(curve, 2, 0.0, gj.s);
    out.ell_used = fit.ell_hat;
    out.warnings.push_back("ell estimated from the fractional-moment decay fit: ell=" +
                           std::to_string(fit.ell_hat) + " r2=" + std::to_string(fit.r2));
    if (!(fit.ell_hat > 0.0))
      throw std::runtime_error("localization length estimate came out nonpositive; "
                               "supply an override");
  }

  for (double nu : job.nu_grid) {
    std::int64_t side = choose_side(nu, out.ell_used, job.factor);
    if (side > job.cap) {
      if (!job.clamp) {
        out.warnings.push_back("nu=" + std::to_string(nu) + " dropped: side " +
                               std::to_string(side) + " exceeds cap " +
                               std::to_string(job.cap));
        continue;
      }
      out.warnings.push_back("nu=" + std::to_string(nu) + ": side " + std::to_string(side) +
                             " clamped to cap " + std::to_string(job.cap));
      side = job.cap;
    }

    const TorusLattice lat = TorusLattice::build(job.d, side);
    const std::vector<double> c1 = lat.centered_positions();
    const EnergyWindows w = EnergyWindows::at(job.e_f, nu);

    std::vector<double> values(static_cast<std::size_t>(job.n_real));
    std::vector<std::int64_t> degenerate(static_cast<std::size_t>(job.n_real), 0);
    run_indexed(job.n_real, job.workers, [&](std::int64_t i) {
      const Realization r = sample_potential(job.model, lat, i);
      const LatticeOperator h = build_hamiltonian(lat, r);
      const EigenSystem eig = diagonalize(h);
      if (job.observable == "psi") {
        values[static_cast<std::size_t>(i)] =
            psi_position_single(eig, c1, w.i_plus, w.i_minus);
      } else {
        const Eigen::MatrixXd core = velocity_core(lat, h, job.variant);
        const SigmaBarSingle sb = sigma_bar_single(eig, core, job.e_f, nu);
        values[static_cast<std::size_t>(i)] = sb.value;
        degenerate[static_cast<std::size_t>(i)] = sb.degenerate_pairs;
      }
    });

    const ScalarStats stats = reduce_scalar(values);
    ScalingPoint p;
    p.nu = nu;
    p.side = side;
    p.n_real = job.n_real;
    p.y_mean = stats.mean;
    p.y_stderr = stats.stderr_;
    const double shape = nu * nu * std::pow(std::log(1.0 / nu), job.d + 2);
    p.ratio_205 = stats.mean /
                  (scaling_bound_constant(205.0, job.d, job.model.rho_sup, out.ell_used) * shape);
    p.ratio_36 = stats.mean /
                 (scaling_bound_constant(36.0, job.d, job.model.rho_sup, out.ell_used) * shape);
    out.points.push_back(p);
    for (std::int64_t dg : degenerate) out.degenerate_pairs += dg;
  }

  if (out.points.size() >= 2) {
    std::vector<double> nus, ys, errs;
    for (const auto& p : out.points) {
      nus.push_back(p.nu);
      ys.push_back(p.y_mean);
      errs.push_back(p.y_stderr);
    }
    bool have_errs = true;
    for (double e : errs)
      if (std::isnan(e) || !(e > 0.0)) have_errs = false;
    out.fit = fit_scaling_exponent(nus, ys, have_errs ? errs : std::vector<double>{},
                                   &out.warnings);
    out.fit_valid = true;
  } else if (!out.points.empty()) {
    out.warnings.push_back("too few surviving frequencies for an exponent fit");
  }
  return out;
}

}  // namespace axcond
