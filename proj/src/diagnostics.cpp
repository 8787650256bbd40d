#include "axcond/diagnostics.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "axcond/binned_measure.hpp"
#include "axcond/measures.hpp"
#include "axcond/operators.hpp"
#include "axcond/runner.hpp"

namespace axcond {
namespace {

BoundCheck reduce_bound(const std::vector<double>& values, double rhs) {
  const ScalarStats s = reduce_scalar(values);
  BoundCheck b;
  b.lhs_mean = s.mean;
  b.lhs_stderr = s.stderr_;
  b.rhs = rhs;
  b.margin = rhs != 0.0 ? (rhs - s.mean) / rhs : (s.mean == 0.0 ? 1.0 : -1.0);
  const double slack = std::isnan(s.stderr_) ? 0.0 : 3.0 * s.stderr_;
  b.pass = s.mean <= rhs + slack;
  b.n = s.n;
  return b;
}

std::vector<double> monte_carlo(const McJob& job,
                                const std::function<double(const EigenSystem&)>& value) {
  if (job.n_real < 1) throw std::invalid_argument("need at least one realization");
  const TorusLattice lat = TorusLattice::build(job.d, job.l);
  std::vector<double> out(static_cast<std::size_t>(job.n_real));
  run_indexed(job.n_real, job.workers, [&](std::int64_t i) {
    const Realization r = sample_potential(job.model, lat, i);
    const EigenSystem eig = diagonalize(build_hamiltonian(lat, r));
    out[static_cast<std::size_t>(i)] = value(eig);
  });
  return out;
}

}  // namespace

BoundCheck wegner_check(const McJob& job, Interval window) {
  if (!(window.lo < window.hi)) throw std::invalid_argument("wegner window must be nonempty");
  const std::vector<double> vals = monte_carlo(job, [&](const EigenSystem& eig) {
    return static_cast<double>(window_indices(eig, window).count()) /
           static_cast<double>(eig.n());
  });
  return reduce_bound(vals, job.model.rho_sup * window.width());
}

MinamiCheck minami_check(const McJob& job, Interval window) {
  if (!(window.lo < window.hi)) throw std::invalid_argument("minami window must be nonempty");
  const TorusLattice lat = TorusLattice::build(job.d, job.l);
  const double n_sites = static_cast<double>(lat.n_sites);
  std::vector<double> pair_counts(static_cast<std::size_t>(job.n_real));
  std::vector<double> fillings(static_cast<std::size_t>(job.n_real));
  run_indexed(job.n_real, job.workers, [&](std::int64_t i) {
    const Realization r = sample_potential(job.model, lat, i);
    const EigenSystem eig = diagonalize(build_hamiltonian(lat, r));
    const double t = static_cast<double>(window_indices(eig, window).count());
    pair_counts[static_cast<std::size_t>(i)] = t * t - t;
    fillings[static_cast<std::size_t>(i)] = t / n_sites;
  });
  const double w = window.width();
  const double rhs = std::numbers::pi * std::numbers::pi * job.model.rho_sup *
                     job.model.rho_sup * w * w * n_sites * n_sites;
  MinamiCheck m;
  m.bound = reduce_bound(pair_counts, rhs);
  m.normalized_lhs = m.bound.lhs_mean / (n_sites * n_sites);
  const double filling = reduce_scalar(fillings).mean;
  m.mean_filling_sq = filling * filling;
  return m;
}

ChainSingle trace_chain_single(const EigenSystem& eig, const std::vector<double>& c1,
                               Interval plus, Interval minus, std::int64_t side) {
  ChainSingle r;
  const IdxRange rp = window_indices(eig, plus);
  const IdxRange rm = window_indices(eig, minus);
  r.n_plus = rp.count();
  r.n_minus = rm.count();
  r.lhs = psi_position_single(eig, c1, plus, minus) * static_cast<double>(eig.n());
  const double l2 = static_cast<double>(side) * static_cast<double>(side);
  r.rhs = 0.25 * l2 * static_cast<double>(r.n_plus) * static_cast<double>(r.n_minus);
  r.holds = r.lhs <= r.rhs + 1e-9 * std::max(1.0, r.rhs);
  r.margin = r.rhs > 0.0 ? (r.rhs - r.lhs) / r.rhs : 1.0;
  return r;
}

ChainCheck chain_check(const McJob& job, double e_f, double nu) {
  const EnergyWindows w = EnergyWindows::at(e_f, nu);
  const TorusLattice lat = TorusLattice::build(job.d, job.l);
  const std::vector<double> c1 = lat.centered_positions();

  std::vector<ChainSingle> singles(static_cast<std::size_t>(job.n_real));
  run_indexed(job.n_real, job.workers, [&](std::int64_t i) {
    const Realization r = sample_potential(job.model, lat, i);
    const EigenSystem eig = diagonalize(build_hamiltonian(lat, r));
    singles[static_cast<std::size_t>(i)] =
        trace_chain_single(eig, c1, w.i_plus, w.i_minus, lat.side);
  });

  ChainCheck c;
  c.n = job.n_real;
  std::vector<double> normalized(singles.size());
  for (std::size_t i = 0; i < singles.size(); ++i) {
    if (!singles[i].holds) ++c.violations;
    c.worst_margin = std::min(c.worst_margin, singles[i].margin);
    normalized[i] = singles[i].lhs / static_cast<double>(lat.n_sites);
  }
  const double j_len = 2.0 * nu;
  const double rhs = 0.25 * std::numbers::pi * std::numbers::pi * job.model.rho_sup *
                     job.model.rho_sup * j_len * j_len *
                     std::pow(static_cast<double>(lat.side), job.d + 2);
  c.end_to_end = reduce_bound(normalized, rhs);
  return c;
}

namespace {

std::vector<std::vector<std::int64_t>> sites_by_distance(const TorusLattice& lat,
                                                         std::int64_t max_dist) {
  std::vector<std::vector<std::int64_t>> groups(static_cast<std::size_t>(max_dist) + 1);
  for (std::int64_t x = 0; x < lat.n_sites; ++x) {
    const std::int64_t d = lat.graph_distance(0, x);
    if (d <= max_dist) groups[static_cast<std::size_t>(d)].push_back(x);
  }
  return groups;
}

DecayCurve reduce_curve(const std::vector<std::vector<double>>& rows,
                        std::int64_t max_dist) {
  DecayCurve curve;
  curve.n_real = static_cast<std::int64_t>(rows.size());
  for (std::int64_t d = 0; d <= max_dist; ++d) {
    std::vector<double> slice(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      slice[i] = rows[i][static_cast<std::size_t>(d)];
    const ScalarStats s = reduce_scalar(slice);
    curve.dist.push_back(d);
    curve.mean.push_back(s.mean);
    curve.stderr_.push_back(s.stderr_);
  }
  return curve;
}

}  // namespace

DecayCurve green_decay_curve(const GreenJob& job) {
  if (!(job.s > 0.0 && job.s < 0.25))
    throw std::invalid_argument("fractional moment order s must lie in (0, 0.25), got " +
                                std::to_string(job.s));
  if (!(job.eta > 0.0)) throw std::invalid_argument("eta must be positive");
  const TorusLattice lat = TorusLattice::build(job.mc.d, job.mc.l);
  const std::int64_t max_dist = lat.side / 2 - 2;
  if (max_dist < 2) throw std::invalid_argument("lattice too small for a decay profile");
  const auto groups = sites_by_distance(lat, max_dist);

  using cd = std::complex<double>;
  using SpMat = Eigen::SparseMatrix<cd>;

  std::vector<std::vector<double>> rows(static_cast<std::size_t>(job.mc.n_real));
  std::vector<std::string> warn_slots(static_cast<std::size_t>(job.mc.n_real));
  run_indexed(job.mc.n_real, job.mc.workers, [&](std::int64_t i) {
    const Realization r = sample_potential(job.mc.model, lat, i);
    const LatticeOperator h = build_hamiltonian(lat, r);

    Eigen::VectorXcd u;
    double eta = job.eta;
    for (int attempt = 0;; ++attempt) {
      const cd z(job.e, eta);
      std::vector<Eigen::Triplet<cd>> trip;
      trip.reserve(h.row.size() + static_cast<std::size_t>(h.n));
      for (std::int64_t x = 0; x < h.n; ++x)
        trip.emplace_back(x, x, cd(h.diag[static_cast<std::size_t>(x)], 0.0) - z);
      for (std::size_t k = 0; k < h.row.size(); ++k)
        trip.emplace_back(h.row[k], h.col[k], h.val[k]);
      SpMat a(h.n, h.n);
      a.setFromTriplets(trip.begin(), trip.end());

      Eigen::SparseLU<SpMat> solver;
      solver.compute(a);
      bool ok = solver.info() == Eigen::Success;
      if (ok) {
        Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(h.n);
        rhs(0) = cd(1.0, 0.0);
        u = solver.solve(rhs);
        const double resid = (a * u - rhs).norm();
        ok = solver.info() == Eigen::Success && u.allFinite() && resid <= 1e-10;
      }
      if (ok) break;
      if (attempt >= 1)
        throw std::runtime_error("resolvent solve failed for realization " +
                                 std::to_string(i) + " even after eta retry");
      eta *= 1.5;
      warn_slots[static_cast<std::size_t>(i)] =
          "realization " + std::to_string(i) + ": solver breakdown, retried with eta=" +
          std::to_string(eta);
    }

    std::vector<double> prof(static_cast<std::size_t>(max_dist) + 1, 0.0);
    for (std::int64_t d = 0; d <= max_dist; ++d) {
      const auto& sites = groups[static_cast<std::size_t>(d)];
      double acc = 0.0;
      for (std::int64_t x : sites) acc += std::pow(std::abs(u(x)), job.s);
      prof[static_cast<std::size_t>(d)] = acc / static_cast<double>(sites.size());
    }
    rows[static_cast<std::size_t>(i)] = std::move(prof);
  });

  DecayCurve curve = reduce_curve(rows, max_dist);
  for (const auto& w : warn_slots)
    if (!w.empty()) curve.warnings.push_back(w);
  return curve;
}

DecayCurve fermi_decay_curve(const FermiJob& job) {
  if (!(job.p > 0.0)) throw std::invalid_argument("moment order p must be positive");
  const TorusLattice lat = TorusLattice::build(job.mc.d, job.mc.l);
  const std::int64_t max_dist = lat.side / 2 - 2;
  if (max_dist < 2) throw std::invalid_argument("lattice too small for a decay profile");
  const auto groups = sites_by_distance(lat, max_dist);

  std::vector<std::vector<double>> rows(static_cast<std::size_t>(job.mc.n_real));
  run_indexed(job.mc.n_real, job.mc.workers, [&](std::int64_t i) {
    const Realization r = sample_potential(job.mc.model, lat, i);
    const EigenSystem eig = diagonalize(build_hamiltonian(lat, r));
    const IdxRange below = window_indices(
        eig, {-std::numeric_limits<double>::infinity(), job.e_f});
    Eigen::VectorXd p = Eigen::VectorXd::Zero(eig.n());
    if (!below.empty()) {
      const auto v = eig.vectors.middleCols(below.lo, below.count());
      p = v * v.row(0).transpose();
    }
    std::vector<double> prof(static_cast<std::size_t>(max_dist) + 1, 0.0);
    for (std::int64_t d = 0; d <= max_dist; ++d) {
      const auto& sites = groups[static_cast<std::size_t>(d)];
      double acc = 0.0;
      for (std::int64_t x : sites) acc += std::pow(std::abs(p(x)), job.p);
      prof[static_cast<std::size_t>(d)] = acc / static_cast<double>(sites.size());
    }
    rows[static_cast<std::size_t>(i)] = std::move(prof);
  });
  return reduce_curve(rows, max_dist);
}

DecayFit fit_exponential_decay(const DecayCurve& curve, std::int64_t min_dist,
                               double mean_floor, double moment_order) {
  if (!(moment_order > 0.0))
    throw std::invalid_argument("moment order must be positive");
  std::vector<double> x, z;
  for (std::size_t i = 0; i < curve.dist.size(); ++i) {
    if (curve.dist[i] < min_dist) continue;
    const double m = curve.mean[i];
    if (!(m > 0.0) || m <= mean_floor) continue;
    x.push_back(static_cast<double>(curve.dist[i]));
    z.push_back(std::log(m));
  }
  const std::size_t n = x.size();
  if (n < 3)
    throw std::invalid_argument("decay fit needs at least 3 usable distances, got " +
                                std::to_string(n));
  double xbar = 0.0, zbar = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    xbar += x[i];
    zbar += z[i];
  }
  xbar /= static_cast<double>(n);
  zbar /= static_cast<double>(n);
  double sxx = 0.0, sxz = 0.0, szz = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - xbar) * (x[i] - xbar);
    sxz += (x[i] - xbar) * (z[i] - zbar);
    szz += (z[i] - zbar) * (z[i] - zbar);
  }
  DecayFit f;
  f.points_used = static_cast<std::int64_t>(n);
  f.slope = sxz / sxx;
  const double intercept = zbar - f.slope * xbar;
  f.k_hat = std::exp(intercept);
  f.ell_hat = -moment_order / f.slope;
  double ssr = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double resid = z[i] - (intercept + f.slope * x[i]);
    ssr += resid * resid;
  }
  f.r2 = szz > 0.0 ? 1.0 - ssr / szz : 1.0;
  f.slope_stderr =
      n > 2 ? std::sqrt(ssr / static_cast<double>(n - 2) / sxx)
            : std::numeric_limits<double>::quiet_NaN();
  return f;
}

SpacingStats level_spacing_stats(const SpacingJob& job) {
  if (!(job.window.lo < job.window.hi))
    throw std::invalid_argument("spacing window must be nonempty");
  if (job.hist_bins < 1 || !(job.hist_max > 0.0))
    throw std::invalid_argument("bad spacing histogram grid");
  const TorusLattice lat = TorusLattice::build(job.mc.d, job.mc.l);

  std::vector<std::vector<double>> rows(static_cast<std::size_t>(job.mc.n_real));
  run_indexed(job.mc.n_real, job.mc.workers, [&](std::int64_t i) {
    const Realization r = sample_potential(job.mc.model, lat, i);
    const EigenSystem eig = diagonalize(build_hamiltonian(lat, r));
    const IdxRange idx = window_indices(eig, job.window);
    if (idx.count() < 2) return;
    std::vector<double> sp(static_cast<std::size_t>(idx.count()) - 1);
    for (std::int64_t k = idx.lo; k + 1 < idx.hi; ++k)
      sp[static_cast<std::size_t>(k - idx.lo)] = eig.energies(k + 1) - eig.energies(k);
    const std::int64_t ns = static_cast<std::int64_t>(sp.size());
    std::vector<double> unfolded;
    unfolded.reserve(sp.size());
    for (std::int64_t k = 0; k < ns; ++k) {
      const std::int64_t lo = std::max<std::int64_t>(0, k - 8);
      const std::int64_t hi = std::min<std::int64_t>(ns, k + 9);
      double local = 0.0;
      for (std::int64_t m = lo; m < hi; ++m) local += sp[static_cast<std::size_t>(m)];
      local /= static_cast<double>(hi - lo);
      if (local > 0.0) unfolded.push_back(sp[static_cast<std::size_t>(k)] / local);
    }
    rows[static_cast<std::size_t>(i)] = std::move(unfolded);
  });

  std::vector<double> pooled;
  for (const auto& r : rows) pooled.insert(pooled.end(), r.begin(), r.end());

  SpacingStats st;
  st.n_spacings = static_cast<std::int64_t>(pooled.size());
  st.edges = linspace_edges(0.0, job.hist_max, job.hist_bins);
  st.hist.assign(static_cast<std::size_t>(job.hist_bins), 0.0);
  if (pooled.empty()) return st;

  for (double u : pooled) {
    std::int64_t bin = static_cast<std::int64_t>(u / job.hist_max *
                                                 static_cast<double>(job.hist_bins));
    bin = std::clamp<std::int64_t>(bin, 0, job.hist_bins - 1);
    st.hist[static_cast<std::size_t>(bin)] += 1.0;
  }
  for (double& h : st.hist) h /= static_cast<double>(pooled.size());

  std::sort(pooled.begin(), pooled.end());
  const double n = static_cast<double>(pooled.size());
  double d = 0.0;
  for (std::size_t i = 0; i < pooled.size(); ++i) {
    const double f = 1.0 - std::exp(-pooled[i]);
    d = std::max(d, std::abs((static_cast<double>(i) + 1.0) / n - f));
    d = std::max(d, std::abs(f - static_cast<double>(i) / n));
  }
  st.ks_exp = d;
  return st;
}

}  // namespace axcond
