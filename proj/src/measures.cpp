#include "axcond/measures.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "axcond/kernels.hpp"

namespace axcond {
namespace {

constexpr double kDegenerateGuard = 1e-12;

// Straddling pairs that can land on the grid have both energies within
// edges.back() of the Fermi energy.
struct StraddleWindows {
  IdxRange above, below;
};

StraddleWindows straddle_windows(const EigenSystem& eig, double e_f, double reach) {
  StraddleWindows w;
  w.below = window_indices(eig, {e_f - reach, e_f});
  w.above = window_indices(eig, {e_f, e_f + reach});
  return w;
}

}  // namespace

SigmaSingle sigma_masses_single(const EigenSystem& eig, const Eigen::MatrixXd& vel_core,
                                double e_f, const std::vector<double>& edges) {
  validate_edges(edges);
  const std::size_t nb = edges.size() - 1;
  SigmaSingle out;
  out.masses.assign(nb, 0.0);

  const auto [above, below] = straddle_windows(eig, e_f, edges.back());
  if (above.empty() || below.empty()) return out;

  const Eigen::MatrixXd m = elements_real(eig, vel_core, above, below);
  const double scale = std::numbers::pi / static_cast<double>(eig.n());
  const std::size_t nc = static_cast<std::size_t>(below.count());
  std::vector<double> v(nc), de(nc), w(nc);

  BinnedMeasure grid;  // reuse the half-open bin lookup
  grid.edges = edges;

  const auto& k = kernels::active();
  for (std::int64_t r = 0; r < above.count(); ++r) {
    const double en = eig.energies(above.lo + r);
    for (std::size_t c = 0; c < nc; ++c) {
      v[c] = m(r, static_cast<std::int64_t>(c));
      de[c] = en - eig.energies(below.lo + static_cast<std::int64_t>(c));
    }
    k.scaled_sq_over(v.data(), de.data(), scale, nc, w.data());
    for (std::size_t c = 0; c < nc; ++c) {
      if (de[c] < kDegenerateGuard) {
        ++out.degenerate_pairs;
        continue;
      }
      const std::int64_t bin = grid.bin_of(de[c]);
      if (bin >= 0) out.masses[static_cast<std::size_t>(bin)] += w[c];
    }
  }
  return out;
}

std::vector<double> sigma_masses_by_energy_scan(const EigenSystem& eig,
                                                const Eigen::MatrixXd& vel_core,
                                                double e_f,
                                                const std::vector<double>& edges) {
  validate_edges(edges);
  const std::size_t nb = edges.size() - 1;
  std::vector<double> masses(nb, 0.0);

  const auto [above, below] = straddle_windows(eig, e_f, edges.back());
  if (above.empty() || below.empty()) return masses;

  const Eigen::MatrixXd m = elements_real(eig, vel_core, above, below);
  const double scale = std::numbers::pi / static_cast<double>(eig.n());

  for (std::size_t bin = 0; bin < nb; ++bin) {
    for (std::int64_t c = 0; c < below.count(); ++c) {
      const double em = eig.energies(below.lo + c);
      const Interval reachable{std::max(e_f, em + edges[bin]), em + edges[bin + 1]};
      if (!(reachable.lo < reachable.hi)) continue;
      const IdxRange ns = window_indices(eig, reachable);
      for (std::int64_t n = std::max(ns.lo, above.lo);
           n < std::min(ns.hi, above.hi); ++n) {
        const double de = eig.energies(n) - em;
        if (de < kDegenerateGuard) continue;
        const double v = m(n - above.lo, c);
        masses[bin] += scale * (v * v) / de;
      }
    }
  }
  return masses;
}

std::vector<double> dos_masses_single(const EigenSystem& eig,
                                      const std::vector<double>& edges) {
  validate_edges(edges);
  std::vector<double> masses(edges.size() - 1, 0.0);
  BinnedMeasure grid;
  grid.edges = edges;
  const double weight = 1.0 / static_cast<double>(eig.n());
  for (std::int64_t i = 0; i < eig.n(); ++i) {
    const std::int64_t bin = grid.bin_of(eig.energies(i));
    if (bin >= 0) masses[static_cast<std::size_t>(bin)] += weight;
  }
  return masses;
}

double psi_position_single(const EigenSystem& eig, const std::vector<double>& c1,
                           Interval plus, Interval minus) {
  const IdxRange rp = window_indices(eig, plus);
  const IdxRange rm = window_indices(eig, minus);
  if (rp.empty() || rm.empty()) return 0.0;
  const Eigen::MatrixXd m = position_elements(eig, c1, rp, rm);
  return kernels::active().sum_sq(m.data(), static_cast<std::size_t>(m.size())) /
         static_cast<double>(eig.n());
}

PsiVelocity psi_velocity_single(const EigenSystem& eig, const Eigen::MatrixXd& vel_core,
                                Interval plus, Interval minus) {
  PsiVelocity out;
  const IdxRange rp = window_indices(eig, plus);
  const IdxRange rm = window_indices(eig, minus);
  if (rp.empty() || rm.empty()) return out;
  const Eigen::MatrixXd m = elements_real(eig, vel_core, rp, rm);
  std::vector<double> v, de;
  v.reserve(static_cast<std::size_t>(m.size()));
  de.reserve(static_cast<std::size_t>(m.size()));
  for (std::int64_t r = 0; r < rp.count(); ++r)
    for (std::int64_t c = 0; c < rm.count(); ++c) {
      const double gap = eig.energies(rp.lo + r) - eig.energies(rm.lo + c);
      if (std::abs(gap) < kDegenerateGuard) {
        ++out.degenerate_pairs;
        continue;
      }
      v.push_back(m(r, c));
      de.push_back(gap);
    }
  out.value = kernels::active().sum_sq_ratio(v.data(), de.data(), v.size()) /
              static_cast<double>(eig.n());
  return out;
}

double sigma_bar(const BinnedMeasure& measure, double nu) {
  if (!(nu > 0.0)) throw std::invalid_argument("sigma_bar needs nu > 0");
  if (measure.edges.empty() || measure.edges.front() != 0.0)
    throw std::invalid_argument("sigma_bar needs a frequency grid starting at 0");
  std::int64_t edge = -1;
  for (std::size_t j = 1; j < measure.edges.size(); ++j)
    if (std::abs(measure.edges[j] - nu) <= 1e-12 * std::max(1.0, std::abs(nu))) {
      edge = static_cast<std::int64_t>(j);
      break;
    }
  if (edge < 0)
    throw std::invalid_argument("nu=" + std::to_string(nu) +
                                " is not aligned with a bin edge; sigma_bar does not interpolate");
  double cum = 0.0;
  for (std::int64_t k = 0; k < edge; ++k) cum += measure.mass_mean[static_cast<std::size_t>(k)];
  return cum / nu;
}

SigmaBarSingle sigma_bar_single(const EigenSystem& eig, const Eigen::MatrixXd& vel_core,
                                double e_f, double nu) {
  if (!(nu > 0.0)) throw std::invalid_argument("sigma_bar needs nu > 0");
  SigmaBarSingle out;
  const auto [above, below] = straddle_windows(eig, e_f, nu);
  if (above.empty() || below.empty()) return out;
  const Eigen::MatrixXd m = elements_real(eig, vel_core, above, below);
  const double scale = std::numbers::pi / (static_cast<double>(eig.n()) * nu);
  double acc = 0.0;
  for (std::int64_t r = 0; r < above.count(); ++r) {
    const double en = eig.energies(above.lo + r);
    for (std::int64_t c = 0; c < below.count(); ++c) {
      const double de = en - eig.energies(below.lo + c);
      if (de > nu) continue;
      if (de < kDegenerateGuard) {
        ++out.degenerate_pairs;
        continue;
      }
      const double v = m(r, c);
      acc += scale * (v * v) / de;
    }
  }
  out.value = acc;
  return out;
}

std::complex<double> cauchy_conductivity(const BinnedMeasure& measure, double eta,
                                         double nu) {
  if (!(eta > 0.0))
    throw std::invalid_argument("broadening eta must be positive, got " + std::to_string(eta));
  if (measure.extension != Extension::even)
    throw std::invalid_argument("cauchy_conductivity needs an even-extended measure");
  const std::size_t nb = static_cast<std::size_t>(measure.bins());
  std::vector<double> centers(nb), mirrored(nb);
  for (std::size_t k = 0; k < nb; ++k) {
    centers[k] = measure.center(static_cast<std::int64_t>(k));
    mirrored[k] = -centers[k];
  }
  double re = 0.0, im = 0.0;
  const auto& kt = kernels::active();
  kt.cauchy_sum(measure.mass_mean.data(), centers.data(), nb, nu, eta, &re, &im);
  kt.cauchy_sum(measure.mass_mean.data(), mirrored.data(), nb, nu, eta, &re, &im);
  // -(i/pi) * (re + i*im)
  return {im / std::numbers::pi, -re / std::numbers::pi};
}

}  // namespace axcond
