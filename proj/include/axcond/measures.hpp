#pragma once
#include <complex>
#include <cstdint>
#include <vector>

#include "axcond/binned_measure.hpp"
#include "axcond/spectral.hpp"

namespace axcond {

// One realization's contribution to the conductivity measure on the grid
// (0, edges.back()]: every eigenpair straddling the Fermi energy
// (E_m <= E_F < E_n) deposits pi * |<psi_n, v psi_m>|^2 / (N * dE) into the
// bin containing dE = E_n - E_m. Pairs with dE below the degeneracy guard
// (1e-12) are counted and skipped; pairs beyond the grid are outside the
// measure's frequency window. The negative half is the mirror image
// (Extension::even on the aggregate).
struct SigmaSingle {
  std::vector<double> masses;
  std::int64_t degenerate_pairs = 0;
};

SigmaSingle sigma_masses_single(const EigenSystem& eig, const Eigen::MatrixXd& vel_core,
                                double e_f, const std::vector<double>& edges);

// Same weights accumulated bin-by-bin via energy window lookups instead of
// pair-by-pair; agrees with sigma_masses_single to reduction-order rounding.
std::vector<double> sigma_masses_by_energy_scan(const EigenSystem& eig,
                                                const Eigen::MatrixXd& vel_core,
                                                double e_f,
                                                const std::vector<double>& edges);

// Normalized eigenvalue counting measure on the energy grid.
std::vector<double> dos_masses_single(const EigenSystem& eig,
                                      const std::vector<double>& edges);

// Localization rectangle sum: (1/N) * sum over (n in plus, m in minus) of
// |<psi_n, X1 psi_m>|^2, position form.
double psi_position_single(const EigenSystem& eig, const std::vector<double>& c1,
                           Interval plus, Interval minus);

// Velocity form of the same quantity: |<psi_n, v psi_m>|^2 / dE^2. Agrees
// with the position form to 1e-9 relative for the commutator velocity.
struct PsiVelocity {
  double value = 0.0;
  std::int64_t degenerate_pairs = 0;
};
PsiVelocity psi_velocity_single(const EigenSystem& eig, const Eigen::MatrixXd& vel_core,
                                Interval plus, Interval minus);

// Averaged low-frequency conductivity sigma-bar(nu) = Sigma((0, nu]) / nu.
// nu must be aligned with a bin edge (1e-12 relative); no interpolation.
double sigma_bar(const BinnedMeasure& measure, double nu);

// Exact-pair form of sigma-bar for a single realization (equals the binned
// cumulative evaluated at edge nu).
struct SigmaBarSingle {
  double value = 0.0;
  std::int64_t degenerate_pairs = 0;
};
SigmaBarSingle sigma_bar_single(const EigenSystem& eig, const Eigen::MatrixXd& vel_core,
                                double e_f, double nu);

// Regularized conductivity at broadening eta > 0:
//   sigma(eta, nu) = -(i/pi) * sum over signed bins of mass_k / (c_k + nu - i*eta)
// with c_k the bin centers. Re is even in nu and nonnegative, Im is odd.
std::complex<double> cauchy_conductivity(const BinnedMeasure& measure, double eta,
                                         double nu);

}  // namespace axcond
